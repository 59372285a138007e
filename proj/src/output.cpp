#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "gbsdks/hafnian.hpp"
#include "gbsdks/harness.hpp"

namespace gbsdks {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  return {buf, std::to_chars(buf, buf + sizeof buf, v).ptr};
}

SamplerEvents events_from(const json& j) {
  SamplerEvents e;
  e.explore_fallbacks = j.at("explore_fallbacks").get<std::uint64_t>();
  e.tweak_keep_fallbacks = j.at("tweak_keep_fallbacks").get<std::uint64_t>();
  e.tweak_replace_fallbacks = j.at("tweak_replace_fallbacks").get<std::uint64_t>();
  e.tweak_retries = j.at("tweak_retries").get<std::uint64_t>();
  e.tweak_retry_exhausted = j.at("tweak_retry_exhausted").get<std::uint64_t>();
  return e;
}

// Minimal SVG plot frame with linear or log10 axes.
class Plot {
 public:
  Plot(double x0, double x1, double y0, double y1, bool log_x, bool log_y)
      : log_x_(log_x), log_y_(log_y) {
    x0_ = tx(x0), x1_ = tx(x1), y0_ = ty(y0), y1_ = ty(y1);
    if (x1_ <= x0_) x1_ = x0_ + 1;
    if (y1_ <= y0_) y1_ = y0_ + 1;
  }

  double px(double x) const { return kLeft + (tx(x) - x0_) / (x1_ - x0_) * kInnerW; }
  double py(double y) const { return kTop + kInnerH - (ty(y) - y0_) / (y1_ - y0_) * kInnerH; }

  void frame(std::ostringstream& out, const std::string& title, const std::string& xlabel,
             const std::string& ylabel) const {
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kInnerW << "\" height=\""
        << kInnerH << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\">" << title << "</text>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 16 " << kHeight / 2
        << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
      const double fx = x0_ + (x1_ - x0_) * i / 4;
      const double fy = y0_ + (y1_ - y0_) * i / 4;
      const double sx = kLeft + kInnerW * i / 4.0;
      const double sy = kTop + kInnerH - kInnerH * i / 4.0;
      out << "<text x=\"" << num(sx) << "\" y=\"" << kTop + kInnerH + 16
          << "\" font-size=\"10\" text-anchor=\"middle\">" << label(fx, log_x_) << "</text>\n";
      out << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(sy + 3)
          << "\" font-size=\"10\" text-anchor=\"end\">" << label(fy, log_y_) << "</text>\n";
    }
  }

  static constexpr int kWidth = 720, kHeight = 480, kLeft = 70, kTop = 40;
  static constexpr int kInnerW = 600, kInnerH = 380;

 private:
  double tx(double x) const { return log_x_ ? std::log10(x) : x; }
  double ty(double y) const { return log_y_ ? std::log10(y) : y; }
  static std::string label(double v, bool log) {
    char buf[32];
    std::snprintf(buf, sizeof buf, log ? "1e%.1f" : "%.3g", v);
    return buf;
  }

  bool log_x_, log_y_;
  double x0_, x1_, y0_, y1_;
};

const char* kPalette[] = {"#888888", "#d62728", "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd"};

}  // namespace

json to_json(const SamplerEvents& e) {
  return {{"explore_fallbacks", e.explore_fallbacks},
          {"tweak_keep_fallbacks", e.tweak_keep_fallbacks},
          {"tweak_replace_fallbacks", e.tweak_replace_fallbacks},
          {"tweak_retries", e.tweak_retries},
          {"tweak_retry_exhausted", e.tweak_retry_exhausted}};
}

json to_json(const Fig3Result& r) {
  json methods = json::array();
  for (const auto& m : r.methods) {
    methods.push_back({{"method", m.method},
                       {"checkpoints", m.curve.checkpoints},
                       {"mean", m.curve.mean},
                       {"stddev", m.curve.stddev},
                       {"reference_lines", m.curve.reference_lines},
                       {"final_mean", m.final_mean},
                       {"final_stddev", m.final_stddev},
                       {"events", to_json(m.events)}});
  }
  json j{{"version", kVersion},
         {"config", to_json(r.config)},
         {"graph_fingerprint", r.fingerprint},
         {"master_seed", r.config.master_seed},
         {"greedy_edges", r.greedy_edges},
         {"optimum_edges", r.optimum_edges ? json(*r.optimum_edges) : json(nullptr)},
         {"planted_edges", r.planted_edges ? json(*r.planted_edges) : json(nullptr)},
         {"methods", methods}};
  return j;
}

Fig3Result fig3_from_json(const json& j) {
  try {
    Fig3Result r;
    r.config = parse_config(j.at("config"));
    r.fingerprint = j.at("graph_fingerprint").get<std::string>();
    r.greedy_edges = j.at("greedy_edges").get<int>();
    if (!j.at("optimum_edges").is_null()) r.optimum_edges = j.at("optimum_edges").get<int>();
    if (!j.at("planted_edges").is_null()) r.planted_edges = j.at("planted_edges").get<int>();
    for (const auto& m : j.at("methods")) {
      MethodResult mr;
      mr.method = m.at("method").get<std::string>();
      mr.curve.checkpoints = m.at("checkpoints").get<std::vector<std::uint64_t>>();
      mr.curve.mean = m.at("mean").get<std::vector<double>>();
      mr.curve.stddev = m.at("stddev").get<std::vector<double>>();
      mr.curve.reference_lines = m.at("reference_lines").get<std::map<std::string, double>>();
      mr.final_mean = m.at("final_mean").get<double>();
      mr.final_stddev = m.at("final_stddev").get<double>();
      mr.events = events_from(m.at("events"));
      r.methods.push_back(std::move(mr));
    }
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed result record: ") + e.what());
  }
}

std::string fig3_csv(const Fig3Result& r) {
  std::string out = "method,checkpoint,mean,stddev\n";
  for (const auto& m : r.methods) {
    for (std::size_t i = 0; i < m.curve.checkpoints.size(); ++i) {
      out += m.method + "," + std::to_string(m.curve.checkpoints[i]) + "," + num(m.curve.mean[i]) +
             "," + num(m.curve.stddev[i]) + "\n";
    }
  }
  return out;
}

std::string fig3_svg(const Fig3Result& r) {
  double lo = std::numeric_limits<double>::max(), hi = 0;
  std::uint64_t xmax = 1;
  for (const auto& m : r.methods) {
    for (std::size_t i = 0; i < m.curve.mean.size(); ++i) {
      lo = std::min(lo, m.curve.mean[i] - m.curve.stddev[i]);
      hi = std::max(hi, m.curve.mean[i] + m.curve.stddev[i]);
    }
    xmax = std::max(xmax, m.curve.checkpoints.back());
  }
  std::map<std::string, double> refs;
  if (!r.methods.empty()) refs = r.methods.front().curve.reference_lines;
  for (const auto& [name, v] : refs) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo > hi) lo = 0, hi = 1;
  const Plot plot(1, static_cast<double>(xmax), std::floor(lo) - 1, std::ceil(hi) + 1, true, false);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Plot::kWidth << "\" height=\""
      << Plot::kHeight << "\" font-family=\"sans-serif\">\n";
  out << "<metadata>" << json{{"graph_fingerprint", r.fingerprint}, {"master_seed", r.config.master_seed}}.dump()
      << "</metadata>\n";
  plot.frame(out, "Best edge count vs draws (" + r.config.id + ")", "draws", "best edges");
  int ref_index = 0;
  for (const auto& [name, v] : refs) {
    out << "<line x1=\"" << Plot::kLeft << "\" x2=\"" << Plot::kLeft + Plot::kInnerW << "\" y1=\""
        << num(plot.py(v)) << "\" y2=\"" << num(plot.py(v))
        << "\" stroke=\"black\" stroke-dasharray=\"" << (ref_index ? "2,3" : "6,4") << "\"/>\n";
    out << "<text x=\"" << Plot::kLeft + Plot::kInnerW - 4 << "\" y=\"" << num(plot.py(v) - 4)
        << "\" font-size=\"10\" text-anchor=\"end\">" << name << " " << num(v) << "</text>\n";
    ++ref_index;
  }
  for (std::size_t mi = 0; mi < r.methods.size(); ++mi) {
    const auto& m = r.methods[mi];
    const char* color = kPalette[mi % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < m.curve.checkpoints.size(); ++i) {
      const double x = static_cast<double>(m.curve.checkpoints[i]);
      out << (i ? " " : "") << num(plot.px(x)) << "," << num(plot.py(m.curve.mean[i]));
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < m.curve.checkpoints.size(); ++i) {
      const double x = plot.px(static_cast<double>(m.curve.checkpoints[i]));
      out << "<line x1=\"" << num(x) << "\" x2=\"" << num(x) << "\" y1=\""
          << num(plot.py(m.curve.mean[i] - m.curve.stddev[i])) << "\" y2=\""
          << num(plot.py(m.curve.mean[i] + m.curve.stddev[i])) << "\" stroke=\"" << color << "\"/>\n";
    }
    out << "<text x=\"" << Plot::kLeft + 8 << "\" y=\"" << Plot::kTop + 16 + 14 * mi
        << "\" font-size=\"12\" fill=\"" << color << "\">" << m.method << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string fig1_csv(const std::vector<Fig1Row>& rows) {
  std::string out = "p,index,edges,hafnian,bound,bound_edges,zero_hafnian\n";
  for (const auto& r : rows) {
    out += num(r.p) + "," + std::to_string(r.index) + "," + std::to_string(r.edges) + "," +
           std::to_string(r.hafnian) + "," + num(r.bound) + "," +
           (r.bound_edges ? std::to_string(*r.bound_edges) : std::string()) + "," +
           (r.hafnian == 0 ? "1" : "0") + "\n";
  }
  return out;
}

json fig1_json(const std::vector<Fig1Row>& rows, const Fig1Config& cfg) {
  json data = json::array();
  std::size_t zero = 0;
  for (const auto& r : rows) {
    zero += r.hafnian == 0;
    data.push_back({{"p", r.p},
                    {"index", r.index},
                    {"edges", r.edges},
                    {"hafnian", r.hafnian},
                    {"bound", r.bound},
                    {"bound_edges", r.bound_edges ? json(*r.bound_edges) : json(nullptr)}});
  }
  return {{"version", kVersion},
          {"config", {{"k", cfg.k}, {"probs", cfg.probs}, {"per_p", cfg.per_p}, {"seed", cfg.seed}}},
          {"zero_hafnian_rows", zero},
          {"rows", data}};
}

std::string fig1_svg(const std::vector<Fig1Row>& rows, const Fig1Config& cfg) {
  const int max_edges = cfg.k * (cfg.k - 1) / 2;
  double hmax = 1;
  std::size_t omitted = 0;
  for (const auto& r : rows) {
    if (r.hafnian == 0) {
      ++omitted;
    } else {
      hmax = std::max(hmax, static_cast<double>(r.hafnian));
    }
  }
  hmax = std::max(hmax, pm_upper_bound({cfg.k, max_edges}));
  const Plot plot(0, max_edges, 1, hmax * 2, false, true);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Plot::kWidth << "\" height=\""
      << Plot::kHeight << "\" font-family=\"sans-serif\">\n";
  out << "<metadata>" << json{{"omitted_zero_hafnian", omitted}, {"rows", rows.size()}}.dump()
      << "</metadata>\n";
  out << "<!-- omitted " << omitted << " rows with hafnian 0 from the log-scale axis -->\n";
  plot.frame(out, "Perfect matchings vs edges, k = " + std::to_string(cfg.k), "edges", "hafnian");
  for (const auto& r : rows) {
    if (r.hafnian == 0) continue;
    out << "<circle cx=\"" << num(plot.px(r.edges)) << "\" cy=\""
        << num(plot.py(static_cast<double>(r.hafnian))) << "\" r=\"1.5\" fill=\"#1f77b4\" fill-opacity=\"0.4\"/>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"black\" stroke-dasharray=\"6,4\" points=\"";
  bool first = true;
  for (int l = cfg.k / 2; l <= max_edges; ++l) {
    const double b = pm_upper_bound({cfg.k, l});
    if (b < 1) continue;
    out << (first ? "" : " ") << num(plot.px(l)) << "," << num(plot.py(b));
    first = false;
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

void emit_outputs(const Fig3Result& r, OutputFormat format, const std::filesystem::path& path) {
  switch (format) {
    case OutputFormat::csv: write_text(path, fig3_csv(r)); break;
    case OutputFormat::json: write_text(path, to_json(r).dump(2) + "\n"); break;
    case OutputFormat::svg: write_text(path, fig3_svg(r)); break;
  }
}

void emit_outputs(const std::vector<Fig1Row>& rows, const Fig1Config& cfg, OutputFormat format,
                  const std::filesystem::path& path) {
  switch (format) {
    case OutputFormat::csv: write_text(path, fig1_csv(rows)); break;
    case OutputFormat::json: write_text(path, fig1_json(rows, cfg).dump(2) + "\n"); break;
    case OutputFormat::svg: write_text(path, fig1_svg(rows, cfg)); break;
  }
}

}  // namespace gbsdks
