#pragma once

#include <string>

#include <json.hpp>

#include "rotsys/embedding.hpp"
#include "rotsys/reembed.hpp"

namespace rotsys {

// JSON reports. Keys come out sorted (nlohmann objects are ordered maps) and
// every count is a decimal string so arbitrary-precision values survive any
// JSON reader. Identical inputs produce byte-identical dumps.
namespace report {

using json = nlohmann::json;

inline json faces_report(const Embedding& e) {
  json j;
  j["faces"] = e.faces();
  j["genus"] = e.connected() ? json(e.genus()) : json();
  json verts = json::object();
  for (const auto& v : e.vertices()) verts[v.name] = v.rotation;
  j["vertices"] = verts;
  return j;
}

inline json genus_report(const Embedding& e) {
  json j;
  j["E"] = e.edge_count();
  j["F"] = e.face_count();
  j["V"] = e.vertex_count();
  j["genus"] = e.genus();
  return j;
}

inline json distribution_report(const GenusDistribution& d) {
  json hist = json::object();
  for (const auto& [dg, c] : d.histogram) hist[std::to_string(dg)] = c.str();
  json j;
  j["histogram"] = hist;
  j["total"] = d.total.str();
  j["vertex"] = d.vertex;
  return j;
}

inline json range_report(const RangeEstimate& r, int genus) {
  json per = json::object();
  for (const auto& v : r.per_vertex) {
    json e;
    e["degree"] = v.degree;
    e["faces"] = v.q;
    e["hi"] = v.hi;
    e["lo"] = v.lo;
    per[v.name] = e;
  }
  json j;
  j["genus"] = genus;
  j["gmax_lower"] = genus + r.t2;
  j["gmin_upper"] = genus + r.t1;
  j["mode"] = r.mode;
  j["per_vertex"] = per;
  j["t1"] = r.t1;
  j["t2"] = r.t2;
  return j;
}

inline json certificate_report(const CertificateReport& r) {
  json verts = json::array();
  for (const auto& v : r.vertices) {
    json e;
    e["degree"] = v.degree;
    e["diagonal_cycles"] = v.lambda_ell;
    e["faces"] = v.q;
    e["name"] = v.name;
    e["pass"] = v.pass;
    verts.push_back(e);
  }
  json j;
  j["pass"] = r.pass;
  j["semantics"] = r.semantics;
  j["vertices"] = verts;
  j["which"] = r.which;
  return j;
}

inline json error_report(int code, const std::string& message) {
  json j;
  j["error"] = {{"code", code}, {"message", message}};
  return j;
}

}  // namespace report
}  // namespace rotsys
