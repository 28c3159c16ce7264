#pragma once

#include <string>

#include <json.hpp>

#include "panflip/sorter.hpp"
#include "panflip/verify.hpp"

namespace panflip {

inline nlohmann::json to_json(const BlockStructure& bs) {
  return nlohmann::json{{"classes", bs.classes},
                        {"S", bs.singletons},
                        {"B", bs.blocks},
                        {"nu_times_2", bs.nu2}};
}

inline nlohmann::json to_json(const StepRecord& step) {
  std::vector<std::string> ops;
  ops.reserve(step.ops.size());
  for (const auto& op : step.ops) ops.push_back(format_flip(op));
  return nlohmann::json{{"case", case_name(step.case_id)}, {"ops", ops},     {"dS", step.dS},
                        {"dB", step.dB},                   {"dNu_x2", step.dNu2},
                        {"gain_x2", step.gain2}};
}

inline nlohmann::json to_json(const SortTrace& trace) {
  std::vector<std::string> flips;
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : trace.steps) {
    for (const auto& op : step.ops) flips.push_back(format_flip(op));
    steps.push_back(to_json(step));
  }
  return nlohmann::json{{"k", trace.start.size()},
                        {"start", trace.start.values()},
                        {"flips", flips},
                        {"steps", steps},
                        {"total_flips", trace.total_flips}};
}

/// Human-readable trace: every intermediate permutation with its decomposition
/// (pair classes for even length, adjacency runs for odd).
inline std::string trace_to_text(const SortTrace& trace) {
  const int k = trace.start.size();
  std::string out;
  auto describe = [&](const Permutation& p) {
    std::string line = "  " + format_permutation(p, ' ') + "   ";
    if (k % 2 == 0) {
      const BlockStructure bs = approx_classes(p);
      for (const auto& cls : bs.classes) {
        line += "[";
        for (size_t i = 0; i < cls.size(); ++i) {
          if (i) line += " ";
          line += std::to_string(cls[i]);
        }
        line += "]";
      }
      line += "  S=" + std::to_string(bs.singletons) + " B=" + std::to_string(bs.blocks) +
              " 2nu=" + std::to_string(bs.nu2);
    } else {
      for (const auto& cls : sim_classes(p)) {
        line += "[";
        for (size_t i = 0; i < cls.size(); ++i) {
          if (i) line += " ";
          line += std::to_string(cls[i]);
        }
        line += "]";
      }
    }
    return line + "\n";
  };

  Permutation cur = trace.start;
  out += describe(cur);
  for (const auto& step : trace.steps) {
    for (const auto& op : step.ops) {
      cur = apply(cur, op);
      out += std::string("  ") + case_name(step.case_id) + " " + format_flip(op) + "\n";
      out += describe(cur);
    }
    if (step.ops.empty()) {
      out += std::string("  ") + case_name(step.case_id) + " (no flips)\n";
    }
  }
  out += "total flips: " + std::to_string(trace.total_flips) + " (doubled bound " +
         std::to_string(flip_bound_x2(k)) + ")\n";
  return out;
}

inline nlohmann::json to_json(const CheckResult& c) {
  return nlohmann::json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
}

inline nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  nlohmann::json j{{"checks", checks}, {"all_passed", report.all_passed()}};
  if (report.seed) j["seed"] = *report.seed;
  return j;
}

inline std::string report_to_text(const VerifyReport& report) {
  std::string out;
  for (const auto& c : report.checks) {
    out += (c.passed ? "[PASS] " : "[FAIL] ") + c.name;
    if (!c.detail.empty()) out += "  (" + c.detail + ")";
    out += "\n";
  }
  out += report.all_passed() ? "all checks passed\n" : "CHECKS FAILED\n";
  return out;
}

}  // namespace panflip
