#include "hrt/generator.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "hrt/random.hpp"

namespace hrt {
namespace {

template <typename Id>
PreferenceList<Id> with_ties(const std::vector<Id>& order, double density, Rng& rng) {
  PreferenceList<Id> list;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && rng.bernoulli(density)) {
      list.ties.back().push_back(order[k]);
    } else {
      list.ties.push_back({order[k]});
    }
  }
  return list;
}

}  // namespace

void validate(const GeneratorConfig& config) {
  if (config.num_residents == 0 || config.num_hospitals == 0) {
    throw std::invalid_argument("generator needs at least one resident and one hospital");
  }
  if (config.list_length > config.num_hospitals) {
    throw std::invalid_argument("list length " + std::to_string(config.list_length) +
                                " exceeds hospital count " +
                                std::to_string(config.num_hospitals));
  }
  for (double d : {config.resident_tie_density, config.hospital_tie_density}) {
    if (!(d >= 0.0 && d <= 1.0)) {
      throw std::invalid_argument("tie density must lie in [0, 1]");
    }
  }
}

Instance generate(const GeneratorConfig& config) {
  validate(config);
  Rng rng(config.seed);
  const std::size_t n1 = config.num_residents;
  const std::size_t n2 = config.num_hospitals;

  std::vector<int> capacity(n2, 0);
  for (std::size_t p = 0; p < config.total_posts; ++p) ++capacity[rng.below(n2)];

  // Partial Fisher-Yates: the first L entries are a uniform ordered sample.
  std::vector<std::vector<HospitalId>> chosen(n1);
  std::vector<HospitalId> pool(n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) pool[j] = hospital(j);
    for (std::size_t k = 0; k < config.list_length; ++k) {
      std::swap(pool[k], pool[k + rng.below(n2 - k)]);
    }
    chosen[i].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(config.list_length));
  }

  std::vector<std::vector<ResidentId>> applicants(n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (HospitalId h : chosen[i]) applicants[idx(h)].push_back(resident(i));
  }

  std::vector<ResidentPrefs> residents;
  residents.reserve(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    residents.push_back(with_ties(chosen[i], config.resident_tie_density, rng));
  }
  std::vector<HospitalSpec> hospitals;
  hospitals.reserve(n2);
  for (std::size_t j = 0; j < n2; ++j) {
    rng.shuffle(std::span<ResidentId>(applicants[j]));
    hospitals.push_back(
        {capacity[j], with_ties(applicants[j], config.hospital_tie_density, rng)});
  }
  return Instance(std::move(residents), std::move(hospitals));
}

GeneratorConfig sfas_like(std::size_t num_residents, double hospital_tie_density,
                          std::uint64_t seed) {
  constexpr std::size_t kListLength = 5;
  // floor(0.07 * n1) in integer arithmetic.
  const std::size_t n2 = num_residents * 7 / 100;
  if (n2 < kListLength) {
    throw std::invalid_argument("n1 = " + std::to_string(num_residents) +
                                " gives fewer than 5 hospitals; need n1 >= 72");
  }
  GeneratorConfig config;
  config.num_residents = num_residents;
  config.num_hospitals = n2;
  config.total_posts = num_residents;
  config.list_length = kListLength;
  config.resident_tie_density = 0.0;
  config.hospital_tie_density = hospital_tie_density;
  config.seed = seed;
  return config;
}

}  // namespace hrt
