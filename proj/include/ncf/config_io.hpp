#pragma once

// Config files and CSV emitters.
//
// Config syntax, one key per line, '#' starts a comment:
//   intervals = [1, 3, 2]
//   numerators = [12, 12, 12]
// A single value `numerators = 12` is shorthand for the same N on every
// interval.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ncf/convergents.hpp"
#include "ncf/invariant_density.hpp"
#include "ncf/natural_extension.hpp"
#include "ncf/rational.hpp"
#include "ncf/simulation.hpp"
#include "ncf/system.hpp"

namespace ncf {

SystemConfig parse_config(std::string_view text);
SystemConfig load_config(const std::string& path);
std::string format_config(const SystemConfig& cfg);

/// 12 significant digits; "inf"/"nan" for non-finite values.
std::string fmt(double v);
std::string fmt(const Rational& v);

template <class S>
void write_domain_csv(std::ostream& os, const RectUnion<S>& x, std::size_t iteration);
void write_domain_header(std::ostream& os);

void write_report_csv(std::ostream& os, const std::vector<DomainReport>& reports);
void write_density_csv(std::ostream& os, const DensityGrid& g);
void write_histogram_csv(std::ostream& os, const Histogram& h);

/// Rows n, d_n, N_n, p_n, q_n, error_bound, theta_n.
template <class S>
void write_expansion_csv(std::ostream& os, const SystemConfig& cfg, const std::vector<ExpansionRow<S>>& rows);

}  // namespace ncf
