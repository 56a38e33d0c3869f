#include "submatch/similarity.hpp"

#include <algorithm>
#include <cctype>

namespace submatch {

double jaro_winkler(std::string_view a, std::string_view b) {
  if (a == b)
    return 1.0;
  if (a.empty() || b.empty())
    return 0.0;

  const std::size_t la = a.size(), lb = b.size();
  const std::size_t half = std::max(la, lb) / 2;
  const std::size_t window = half > 0 ? half - 1 : 0;
  std::vector<bool> matched_a(la, false), matched_b(lb, false);

  std::size_t matches = 0;
  for (std::size_t i = 0; i < la; ++i) {
    std::size_t lo = i > window ? i - window : 0;
    std::size_t hi = std::min(lb, i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (!matched_b[j] && a[i] == b[j]) {
        matched_a[i] = true;
        matched_b[j] = true;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0)
    return 0.0;

  std::size_t half_transpositions = 0;
  for (std::size_t i = 0, j = 0; i < la; ++i) {
    if (!matched_a[i])
      continue;
    while (!matched_b[j])
      ++j;
    if (a[i] != b[j])
      ++half_transpositions;
    ++j;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(half_transpositions / 2);
  const double jaro = (m / la + m / lb + (m - t) / m) / 3.0;

  std::size_t prefix = 0;
  for (; prefix < std::min({la, lb, std::size_t{4}}); ++prefix)
    if (a[prefix] != b[prefix])
      break;
  return jaro + prefix * 0.1 * (1.0 - jaro);
}

namespace {

std::string fold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double value_similarity(const std::string& a, const std::string& b, bool case_fold) {
  if (!case_fold)
    return jaro_winkler(a, b);
  return jaro_winkler(fold(a), fold(b));
}

}  // namespace

double node_attr_distance(const AttributeMap& a, const AttributeMap& b,
                          const AttributeSelector& sel, bool case_fold) {
  double sum = 0.0;
  std::size_t shared = 0;
  auto accumulate = [&](const std::string& key) {
    auto ia = a.find(key);
    auto ib = b.find(key);
    if (ia == a.end() || ib == b.end())
      return;
    sum += 1.0 - value_similarity(ia->second, ib->second, case_fold);
    ++shared;
  };
  if (sel.all()) {
    for (const auto& [key, value] : a)
      accumulate(key);
  } else {
    for (const std::string& key : sel.keys)
      accumulate(key);
  }
  if (shared == 0)
    return 1.0;
  return sum / static_cast<double>(shared);
}

CandidateMap candidate_map(const AttributedGraph& target, const AttributedGraph& query,
                           const AttributeSelector& sel, double threshold,
                           bool case_fold) {
  CandidateMap p(target.node_count());
  for (NodeIndex u = 0; u < target.node_count(); ++u) {
    const AttributeMap& ua = target.node_attributes(u);
    for (NodeIndex w = 0; w < query.node_count(); ++w) {
      double similarity = 1.0 - node_attr_distance(ua, query.node_attributes(w), sel, case_fold);
      if (similarity >= threshold)
        p[u].push_back(w);
    }
  }
  return p;
}

}  // namespace submatch
