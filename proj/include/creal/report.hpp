#pragma once

#include <string>
#include <vector>

namespace cra {

// Line-oriented structured text: "key: value" pairs, two-space indent per
// nesting level, repeated keys allowed. Chosen over a general format so
// the verify path stays exact and dependency-free.
struct ReportNode {
  std::string key;
  std::string value;
  std::vector<ReportNode> children;

  ReportNode& child(std::string k, std::string v = "") {
    children.push_back(ReportNode{std::move(k), std::move(v), {}});
    return children.back();
  }

  const ReportNode* find(const std::string& k) const {
    for (const auto& c : children)
      if (c.key == k) return &c;
    return nullptr;
  }
};

std::string render_reports(const std::vector<ReportNode>& reports);

// Inverse of render_reports. Throws ParseError on malformed input.
std::vector<ReportNode> parse_reports(const std::string& text);

struct VerifyResult {
  std::string description;
  bool pass = false;
};

// Re-checks every witness block in the parsed reports by exact rational
// arithmetic, one result per witness.
std::vector<VerifyResult> verify_reports(const std::vector<ReportNode>& reports);

}  // namespace cra
