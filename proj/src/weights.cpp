#include "foldkit/weights.hpp"

#include "foldkit/error.hpp"

#include <numeric>
#include <sstream>

namespace foldkit {

std::int64_t height(const RootVector& nu) { return std::accumulate(nu.begin(), nu.end(), std::int64_t{0}); }

bool HeightLexLess::operator()(const RootVector& a, const RootVector& b) const {
  const auto ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

std::string format_vector(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(v[k]);
  }
  return s;
}

std::vector<std::int64_t> parse_vector(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (cell.empty() || used != cell.size()) throw InputError("malformed integer '" + cell + "' in '" + text + "'");
    out.push_back(v);
  }
  return out;
}

bool Window::contains(const RootVector& nu) const {
  for (auto x : nu)
    if (x < 0) return false;
  if (max_height && height(nu) > *max_height) return false;
  for (std::size_t j = 0; j < caps.size() && j < nu.size(); ++j)
    if (caps[j] && nu[j] > *caps[j]) return false;
  return true;
}

std::string Window::key() const {
  std::string s = "h=" + (max_height ? std::to_string(*max_height) : std::string("*")) + ";c=";
  for (std::size_t j = 0; j < caps.size(); ++j) {
    if (j) s += ',';
    s += caps[j] ? std::to_string(*caps[j]) : std::string("*");
  }
  return s;
}

} // namespace foldkit
