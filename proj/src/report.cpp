#include "creal/report.hpp"

#include <sstream>

#include "creal/rational.hpp"

namespace cra {

namespace {

constexpr const char* kHeader = "crlab-report v1";

void render_node(const ReportNode& node, unsigned depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += node.key;
  out += ':';
  if (!node.value.empty()) {
    out += ' ';
    out += node.value;
  }
  out += '\n';
  for (const auto& c : node.children) render_node(c, depth + 1, out);
}

}  // namespace

std::string render_reports(const std::vector<ReportNode>& reports) {
  std::string out = kHeader;
  out += '\n';
  for (const auto& r : reports) render_node(r, 0, out);
  return out;
}

std::vector<ReportNode> parse_reports(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  ReportNode root;
  std::vector<ReportNode*> stack{&root};  // stack[d] is the parent at depth d
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kHeader) throw ParseError("missing report header", lineno, 1);
      saw_header = true;
      continue;
    }
    std::size_t indent = 0;
    while (indent < line.size() && line[indent] == ' ') ++indent;
    if (indent % 2 != 0) throw ParseError("odd indentation", lineno, indent + 1);
    const std::size_t depth = indent / 2;
    if (depth >= stack.size())
      throw ParseError("indentation skips a level", lineno, indent + 1);
    const std::size_t colon = line.find(':', indent);
    if (colon == std::string::npos) throw ParseError("missing ':'", lineno, indent + 1);
    ReportNode node;
    node.key = line.substr(indent, colon - indent);
    if (colon + 1 < line.size()) {
      std::size_t start = colon + 1;
      while (start < line.size() && line[start] == ' ') ++start;
      node.value = line.substr(start);
    }
    stack.resize(depth + 1);
    stack[depth]->children.push_back(std::move(node));
    stack.push_back(&stack[depth]->children.back());
  }
  if (!saw_header) throw ParseError("empty report", 1, 1);
  return std::move(root.children);
}

namespace {

// Rational fields render as "p/q ~ decimal"; take the exact part.
Rational field_rat(const ReportNode& node, const std::string& key) {
  const ReportNode* c = node.find(key);
  if (!c) throw ParseError("missing field '" + key + "'", 1, 1);
  const std::size_t cut = c->value.find(" ~");
  return Rational::parse(cut == std::string::npos ? c->value : c->value.substr(0, cut));
}

long field_int(const ReportNode& node, const std::string& key) {
  const ReportNode* c = node.find(key);
  if (!c) throw ParseError("missing field '" + key + "'", 1, 1);
  try {
    std::size_t pos = 0;
    const long v = std::stol(c->value, &pos);
    if (pos != c->value.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad integer field '" + key + "'", 1, 1);
  }
}

bool check_apartness(const ReportNode& node) {
  const Rational l = field_rat(node, "left_approx");
  const Rational r = field_rat(node, "right_approx");
  const Rational gap = field_rat(node, "gap_lower_bound");
  const long n = field_int(node, "precision");
  return gap.sign() > 0 && gap == abs(l - r) - Rational::pow2(1 - n);
}

bool check_membership(const ReportNode& node) {
  const Rational center = field_rat(node, "center");
  const Rational radius = field_rat(node, "radius");
  const Rational approx = field_rat(node, "point_approx");
  const Rational margin = field_rat(node, "margin");
  const long n = field_int(node, "precision");
  return margin.sign() > 0 &&
         abs(approx - center) <= radius - margin - Rational::pow2(-n);
}

bool check_distinct_value(const ReportNode& node) {
  const Rational p = field_rat(node, "p");
  const Rational q = field_rat(node, "q");
  const Rational lo = field_rat(node, "domain_lo");
  const Rational hi = field_rat(node, "domain_hi");
  const ReportNode* ap = node.find("apartness");
  return ap && check_apartness(*ap) && lo <= p && p <= hi && lo <= q && q <= hi &&
         !(p == q);
}

bool check_contradiction(const ReportNode& node) {
  const Rational center = field_rat(node, "center");
  const Rational radius = field_rat(node, "claimed_radius");
  const Rational lo = field_rat(node, "stage_lo");
  const Rational hi = field_rat(node, "stage_hi");
  const long n = field_int(node, "precision");
  const Rational eps = Rational::pow2(-n);
  const ReportNode* ap = node.find("apartness");
  return ap && check_apartness(*ap) && radius.sign() > 0 &&
         eps < radius / Rational(4) && lo > center - radius + eps &&
         hi < center + radius - eps;
}

bool check_overlap(const ReportNode& node) {
  const Rational point = field_rat(node, "point");
  const ReportNode* a = node.find("membership_a");
  const ReportNode* b = node.find("membership_b");
  return a && b && check_membership(*a) && check_membership(*b) &&
         field_rat(*a, "point_approx") == point &&
         field_rat(*b, "point_approx") == point;
}

bool check_specker_cert(const ReportNode& node) {
  const Rational s_n = field_rat(node, "s_n");
  const Rational approx = field_rat(node, "x_approx");
  const Rational margin = field_rat(node, "margin");
  const long n = field_int(node, "n");
  return margin.sign() > 0 && margin == s_n - approx - Rational::pow2(-n);
}

void walk(const ReportNode& node, const std::string& path,
          std::vector<VerifyResult>& out) {
  const std::string here = path.empty() ? node.key : path + "/" + node.key;
  auto checked = [&](bool (*check)(const ReportNode&)) {
    // A malformed witness block fails rather than aborting the whole run.
    try {
      out.push_back({here, check(node)});
    } catch (const Error&) {
      out.push_back({here, false});
    }
  };
  bool descend = true;
  if (node.key == "apartness")
    checked(check_apartness);
  else if (node.key == "membership" || node.key == "membership_a" ||
           node.key == "membership_b")
    checked(check_membership);
  else if (node.key == "distinct-value") {
    checked(check_distinct_value);
    descend = false;  // the inner apartness is part of this check
  } else if (node.key == "contradiction") {
    checked(check_contradiction);
    descend = false;
  } else if (node.key == "overlap") {
    checked(check_overlap);
    descend = false;
  } else if (node.key == "specker-certificate")
    checked(check_specker_cert);
  if (descend)
    for (const auto& c : node.children) walk(c, here, out);
}

}  // namespace

std::vector<VerifyResult> verify_reports(const std::vector<ReportNode>& reports) {
  std::vector<VerifyResult> out;
  std::size_t i = 0;
  for (const auto& r : reports) {
    ++i;
    for (const auto& c : r.children) walk(c, "report" + std::to_string(i), out);
  }
  return out;
}

}  // namespace cra
