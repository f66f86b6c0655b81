#include "kirchhoff/io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "kirchhoff/common.hpp"

namespace kirchhoff {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << std::setprecision(17);
  return out;
}

}  // namespace

void write_field_csv(const std::string& path, const ScalarField& u) {
  auto out = open_out(path);
  const GridDomain& d = u.domain;
  if (d.kind == GridDomain::Kind::interval) {
    out << "# kind=interval extent=" << d.extent[0]
        << " nodes=" << d.resolution[0] << "\n";
    out << "x,u\n";
    for (int k = 0; k < d.node_count(); ++k)
      out << d.node_position(k)[0] << "," << u.values[std::size_t(k)] << "\n";
  } else {
    out << "# kind=rectangle extent=" << d.extent[0]
        << " extent_y=" << d.extent[1] << " nodes=" << d.resolution[0]
        << " nodes_y=" << d.resolution[1] << "\n";
    out << "x,y,u\n";
    for (int k = 0; k < d.node_count(); ++k) {
      const auto p = d.node_position(k);
      out << p[0] << "," << p[1] << "," << u.values[std::size_t(k)] << "\n";
    }
  }
}

ScalarField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field file: " + path);
  std::string header;
  std::getline(in, header);
  if (header.rfind("# kind=", 0) != 0)
    throw std::runtime_error("field file missing grid header: " + path);
  std::map<std::string, std::string> kv;
  {
    std::istringstream hs(header.substr(2));
    std::string tok;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
  }
  GridDomain dom;
  if (kv.at("kind") == "interval") {
    dom = GridDomain::interval(std::stod(kv.at("extent")),
                               std::stoi(kv.at("nodes")));
  } else if (kv.at("kind") == "rectangle") {
    dom = GridDomain::rectangle(std::stod(kv.at("extent")),
                                std::stod(kv.at("extent_y")),
                                std::stoi(kv.at("nodes")),
                                std::stoi(kv.at("nodes_y")));
  } else {
    throw std::runtime_error("field file has unknown grid kind: " + path);
  }
  std::string line;
  std::getline(in, line);  // column header
  ScalarField u(dom);
  for (int k = 0; k < dom.node_count(); ++k) {
    if (!std::getline(in, line))
      throw std::runtime_error("field file truncated: " + path);
    const auto comma = line.rfind(',');
    u.values[std::size_t(k)] = std::stod(line.substr(comma + 1));
  }
  return u;
}

void write_trace_csv(const std::string& path, const SolveReport& report) {
  auto out = open_out(path);
  out << "iteration,energy,mass_plus,mass_minus\n";
  for (std::size_t i = 0; i < report.energy_trace.size(); ++i) {
    const double mp =
        i < report.mass_trace_plus.size() ? report.mass_trace_plus[i] : 0.0;
    const double mm =
        i < report.mass_trace_minus.size() ? report.mass_trace_minus[i] : 0.0;
    out << i << "," << report.energy_trace[i] << "," << mp << "," << mm
        << "\n";
  }
}

void write_surface_csv(const std::string& path, const SurfaceScan& scan) {
  auto out = open_out(path);
  out << "t,s,h\n";
  for (int i = 0; i < scan.samples; ++i)
    for (int j = 0; j < scan.samples; ++j)
      out << scan.t_at(i) << "," << scan.s_at(j) << ","
          << scan.h[std::size_t(i) * std::size_t(scan.samples) +
                    std::size_t(j)]
          << "\n";
}

namespace {

nlohmann::ordered_json report_header(const std::string& cfg_hash) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  doc["config_hash"] = cfg_hash;
  return doc;
}

}  // namespace

nlohmann::ordered_json hypotheses_json(const HypothesisReport& report,
                                       const std::string& cfg_hash) {
  auto doc = report_header(cfg_hash);
  doc["all_passed"] = report.all_passed();
  doc["has_warnings"] = report.has_warnings();
  auto& arr = doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["warned"] = c.warned;
    item["worst_t"] = c.worst_t;
    item["margin"] = c.margin;
    if (!c.detail.empty()) item["detail"] = c.detail;
    arr.push_back(std::move(item));
  }
  return doc;
}

nlohmann::ordered_json lemmas_json(const LemmaSuiteResult& suite,
                                   const std::string& cfg_hash) {
  auto doc = report_header(cfg_hash);
  doc["all_passed"] = suite.all_passed();
  auto& arr = doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : suite.checks) {
    nlohmann::ordered_json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["worst_margin"] = c.worst_margin;
    item["worst_point"] = c.worst_point;
    item["second_point"] = c.second_point;
    item["slack"] = c.slack;
    arr.push_back(std::move(item));
  }
  return doc;
}

nlohmann::ordered_json solve_json(const SolveReport& report,
                                  const AuditReport& audit,
                                  const std::string& cfg_hash) {
  auto doc = report_header(cfg_hash);
  doc["converged"] = report.converged;
  doc["energy"] = report.energy_c0;
  doc["residual_norm"] = report.residual_norm;
  doc["nodal_domains"] = report.nodal_domains;
  doc["scaling_drift"] = report.scaling_drift;
  doc["iterations"] = report.iterations;
  doc["diagnostic_q"] = report.diagnostic_q;
  doc["lower_bound_diag"] = report.lower_bound_diag;
  if (report.ground_energy) doc["ground_energy"] = *report.ground_energy;
  if (!report.failure.empty()) doc["failure"] = report.failure;
  doc["audit_all_passed"] = audit.all_passed();
  auto& arr = doc["audit"] = nlohmann::ordered_json::array();
  for (const auto& c : audit.checks) {
    nlohmann::ordered_json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["skipped"] = c.skipped;
    item["value"] = c.value;
    if (!c.detail.empty()) item["detail"] = c.detail;
    arr.push_back(std::move(item));
  }
  return doc;
}

void write_json(const std::string& path, const nlohmann::ordered_json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

}  // namespace kirchhoff
