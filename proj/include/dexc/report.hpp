#pragma once
// Uniform run reports.  Every command that checks things produces a flat
// list of items; the human rendering prints one verdict line per item and
// the structured rendering is a single JSON document with stable keys, so
// a CI job can diff it against a golden file.  Reports carry no clocks or
// machine state: two runs of the same build print identical bytes.

#include <string>
#include <vector>

#include "json.hpp"

namespace dexc {

struct ReportItem {
  std::string id;       // stable machine id, dotted
  std::string anchor;   // what the item is about, human-stable
  bool pass = true;
  std::string witness;  // failure data, or informative detail on pass
  // filled for kernel rejections only
  std::string node, rule, message;
};

struct RunReport {
  std::string command;
  std::string battery;  // version + scale when a battery was involved
  std::vector<ReportItem> items;

  bool ok() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
  long failed() const {
    long n = 0;
    for (const auto& it : items)
      if (!it.pass) ++n;
    return n;
  }
};

inline std::string render_human(const RunReport& r) {
  std::string out;
  for (const auto& it : r.items) {
    out += (it.pass ? "[pass] " : "[FAIL] ") + it.id;
    if (!it.anchor.empty()) out += ": " + it.anchor;
    out += "\n";
    if (!it.witness.empty()) out += "       " + it.witness + "\n";
    if (!it.message.empty())
      out += "       at node " + it.node + " [" + it.rule + "]: " +
             it.message + "\n";
  }
  out += r.command + ": " + std::to_string(r.items.size()) + " items, ";
  if (r.ok())
    out += "all pass";
  else
    out += std::to_string(r.failed()) + " failing";
  if (!r.battery.empty()) out += " (" + r.battery + ")";
  out += "\n";
  return out;
}

inline std::string render_structured(const RunReport& r) {
  nlohmann::json doc;
  doc["command"] = r.command;
  if (!r.battery.empty()) doc["battery"] = r.battery;
  doc["verdict"] = r.ok() ? "pass" : "fail";
  doc["items"] = nlohmann::json::array();
  for (const auto& it : r.items) {
    nlohmann::json j;
    j["item"] = it.id;
    j["anchor"] = it.anchor;
    j["verdict"] = it.pass ? "pass" : "fail";
    j["witness"] = it.witness;
    if (!it.message.empty()) {
      j["node"] = it.node;
      j["rule"] = it.rule;
      j["message"] = it.message;
    }
    doc["items"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

inline std::string render_report(const RunReport& r, bool structured) {
  return structured ? render_structured(r) : render_human(r);
}

}  // namespace dexc
