#include "kitc/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kitc {

namespace {

using nlohmann::json;

json to_object(const RunReport& r) {
  return json{{"example", r.example},       {"kernel", r.kernel},
              {"N", r.N},                   {"theta", r.theta},
              {"n", r.n},                   {"N0", r.N0},
              {"eps", r.eps},               {"seed", r.seed},
              {"threads", r.threads},       {"E", r.E},
              {"t_tree_s", r.t_tree_s},     {"t_moments_s", r.t_moments_s},
              {"t_treecode_s", r.t_treecode_s}, {"t_direct_s", r.t_direct_s},
              {"speedup", r.speedup},       {"kernel_evals", r.kernel_evals},
              {"moment_scalars", r.moment_scalars}, {"sampled", r.sampled}};
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{
      "example", "kernel",     "N",           "theta",        "n",          "N0",
      "eps",     "seed",       "threads",     "E",            "t_tree_s",   "t_moments_s",
      "t_treecode_s", "t_direct_s", "speedup", "kernel_evals", "moment_scalars", "sampled"};
  return cols;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : report_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string to_csv_row(const RunReport& r) {
  std::ostringstream os;
  os << r.example << ',' << r.kernel << ',' << r.N << ',' << fmt_double(r.theta) << ',' << r.n << ',' << r.N0
     << ',' << fmt_double(r.eps) << ',' << r.seed << ',' << r.threads << ',' << fmt_double(r.E) << ','
     << fmt_double(r.t_tree_s) << ',' << fmt_double(r.t_moments_s) << ',' << fmt_double(r.t_treecode_s) << ','
     << fmt_double(r.t_direct_s) << ',' << fmt_double(r.speedup) << ',' << r.kernel_evals << ','
     << r.moment_scalars << ',' << (r.sampled ? 1 : 0);
  return os.str();
}

RunReport from_csv_row(const std::string& row) {
  std::vector<std::string> f;
  std::stringstream ss(row);
  for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
  if (f.size() != report_columns().size())
    throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields, expected " +
                                std::to_string(report_columns().size()));
  try {
    RunReport r;
    r.example = std::stoi(f[0]);
    r.kernel = f[1];
    r.N = std::stoull(f[2]);
    r.theta = std::stod(f[3]);
    r.n = std::stoi(f[4]);
    r.N0 = std::stoull(f[5]);
    r.eps = std::stod(f[6]);
    r.seed = std::stoull(f[7]);
    r.threads = std::stoi(f[8]);
    r.E = std::stod(f[9]);
    r.t_tree_s = std::stod(f[10]);
    r.t_moments_s = std::stod(f[11]);
    r.t_treecode_s = std::stod(f[12]);
    r.t_direct_s = std::stod(f[13]);
    r.speedup = std::stod(f[14]);
    r.kernel_evals = std::stoull(f[15]);
    r.moment_scalars = std::stoull(f[16]);
    r.sampled = std::stoi(f[17]) != 0;
    return r;
  } catch (const std::logic_error& e) {
    throw std::invalid_argument(std::string("malformed CSV row: ") + e.what());
  }
}

std::string to_json(const RunReport& r) { return to_object(r).dump(); }

std::string to_json(const std::vector<RunReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_object(r));
  return arr.dump(2);
}

RunReport from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    j.at("example").get_to(r.example);
    j.at("kernel").get_to(r.kernel);
    j.at("N").get_to(r.N);
    j.at("theta").get_to(r.theta);
    j.at("n").get_to(r.n);
    j.at("N0").get_to(r.N0);
    j.at("eps").get_to(r.eps);
    j.at("seed").get_to(r.seed);
    j.at("threads").get_to(r.threads);
    j.at("E").get_to(r.E);
    j.at("t_tree_s").get_to(r.t_tree_s);
    j.at("t_moments_s").get_to(r.t_moments_s);
    j.at("t_treecode_s").get_to(r.t_treecode_s);
    j.at("t_direct_s").get_to(r.t_direct_s);
    j.at("speedup").get_to(r.speedup);
    j.at("kernel_evals").get_to(r.kernel_evals);
    j.at("moment_scalars").get_to(r.moment_scalars);
    j.at("sampled").get_to(r.sampled);
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad run report JSON: ") + e.what());
  }
}

}  // namespace kitc
