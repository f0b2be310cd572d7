#include "ncf/config_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace ncf {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::int64_t> parse_list(const std::string& raw, std::size_t line) {
  std::string v = raw;
  bool bracketed = !v.empty() && v.front() == '[';
  if (bracketed) {
    if (v.back() != ']') throw ConfigError("line " + std::to_string(line) + ": missing ']'");
    v = v.substr(1, v.size() - 2);
  }
  std::vector<std::int64_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (t.empty()) throw ConfigError("line " + std::to_string(line) + ": empty list entry");
    std::size_t used = 0;
    long long val = 0;
    try {
      val = std::stoll(t, &used);
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(line) + ": '" + t + "' is not an integer");
    }
    if (used != t.size()) throw ConfigError("line " + std::to_string(line) + ": '" + t + "' is not an integer");
    out.push_back(val);
  }
  if (out.empty()) throw ConfigError("line " + std::to_string(line) + ": empty list");
  return out;
}

}  // namespace

SystemConfig parse_config(std::string_view text) {
  std::optional<std::vector<std::int64_t>> intervals, numerators;
  std::stringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(no) + ": expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key == "intervals") {
      if (intervals) throw ConfigError("line " + std::to_string(no) + ": 'intervals' given twice");
      intervals = parse_list(value, no);
    } else if (key == "numerators") {
      if (numerators) throw ConfigError("line " + std::to_string(no) + ": 'numerators' given twice");
      numerators = parse_list(value, no);
    } else {
      throw ConfigError("line " + std::to_string(no) + ": unknown key '" + key + "'");
    }
  }
  if (!intervals) throw ConfigError("missing 'intervals'");
  if (!numerators) throw ConfigError("missing 'numerators'");
  if (numerators->size() == 1 && intervals->size() > 1) numerators->assign(intervals->size(), numerators->front());
  return SystemConfig(*intervals, *numerators);
}

SystemConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const SystemConfig& cfg) {
  auto list = [](const std::vector<std::int64_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
  };
  return "intervals = " + list(cfg.lefts()) + "\nnumerators = " + list(cfg.numerators()) + "\n";
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(const Rational& v) { return to_string(v); }

void write_domain_header(std::ostream& os) { os << "iteration,interval_index,x_lo,x_hi,y_lo,y_hi,tail\n"; }

template <class S>
void write_domain_csv(std::ostream& os, const RectUnion<S>& x, std::size_t iteration) {
  for (std::size_t i = 0; i < x.parts.size(); ++i)
    for (const auto& r : x.parts[i])
      os << iteration << ',' << i + 1 << ',' << fmt(r.x_lo) << ',' << fmt(r.x_hi) << ',' << fmt(r.y_lo) << ','
         << (r.y_hi ? fmt(*r.y_hi) : std::string("inf")) << ',' << (r.tail ? 1 : 0) << '\n';
}

void write_report_csv(std::ostream& os, const std::vector<DomainReport>& reports) {
  os << "n,mass,r_n,rect_count,pruned\n";
  for (const auto& r : reports)
    os << r.n << ',' << fmt(r.mass) << ',' << fmt(r.r) << ',' << r.rect_count << ',' << r.pruned << '\n';
}

void write_density_csv(std::ostream& os, const DensityGrid& g) {
  os << "interval_index,x,f\n";
  for (std::size_t c = 0; c < g.x.size(); ++c) os << g.interval[c] + 1 << ',' << fmt(g.x[c]) << ',' << fmt(g.f[c]) << '\n';
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
  os << "interval_index,bin_left,bin_right,density\n";
  DensityGrid g = h.density();
  double w = g.cell_width;
  for (std::size_t c = 0; c < g.x.size(); ++c)
    os << g.interval[c] + 1 << ',' << fmt(g.x[c] - w / 2) << ',' << fmt(g.x[c] + w / 2) << ',' << fmt(g.f[c]) << '\n';
}

template <class S>
void write_expansion_csv(std::ostream& os, const SystemConfig& cfg, const std::vector<ExpansionRow<S>>& rows) {
  os << "n,d_n,N_n,p_n,q_n,error_bound,theta_n\n";
  if (rows.empty()) return;
  // theta_n = T^n x / (1 + T^n x * q_{n-1}/q_n)
  for (const auto& r : rows) {
    double t = as_double(r.tail);
    double w = to_double(Rational(r.state.q_prev, r.state.q_cur));
    os << r.n << ',' << r.digit << ',' << r.numerator << ',' << r.state.p_cur.get_str() << ','
       << r.state.q_cur.get_str() << ',' << fmt(error_bound(r.state, cfg)) << ',' << fmt(t / (1.0 + t * w)) << '\n';
  }
}

template void write_domain_csv<double>(std::ostream&, const RectUnion<double>&, std::size_t);
template void write_domain_csv<Rational>(std::ostream&, const RectUnion<Rational>&, std::size_t);
template void write_expansion_csv<double>(std::ostream&, const SystemConfig&, const std::vector<ExpansionRow<double>>&);
template void write_expansion_csv<Rational>(std::ostream&, const SystemConfig&,
                                            const std::vector<ExpansionRow<Rational>>&);

}  // namespace ncf
