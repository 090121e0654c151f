#include "pipecalc/oracle.hpp"

#include <stdexcept>

namespace pipecalc::oracle {

std::vector<Rational> capacities(const Pipeline& p) {
  std::vector<Rational> out;
  for (const auto& s : p.stages()) out.push_back(s.capacity);
  return out;
}

std::vector<Rational> products(const Pipeline& p, const Multiplier& a) {
  std::vector<Rational> out;
  for (const auto& s : p.stages()) {
    Rational product = s.capacity;
    product *= a.factor(s.id);
    out.push_back(product);
  }
  return out;
}

std::vector<std::size_t> minimisers(const std::vector<Rational>& values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < values.size() && !dominated; ++j) {
      dominated = values[j] < values[i];
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

Rational minimum(const std::vector<Rational>& values) {
  const auto idx = minimisers(values);
  if (idx.empty()) throw std::logic_error("minimum of an empty family");
  return values[idx.front()];
}

std::vector<StageId> ids_at(const Pipeline& p, const std::vector<std::size_t>& indices) {
  std::vector<StageId> out;
  for (auto i : indices) out.push_back(p.stages()[i].id);
  return out;
}

}  // namespace pipecalc::oracle
