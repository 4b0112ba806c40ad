#include "nudd/model.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>
#include "nudd/rng.hpp"

namespace nudd {

Coefficients Coefficients::zeros(int n_spins) {
  Coefficients k;
  k.n_spins = n_spins;
  k.b.assign(static_cast<size_t>(n_spins), {0.0, 0.0, 0.0});
  k.c.assign(static_cast<size_t>(n_spins * n_spins * 9), 0.0);
  return k;
}

SpinBathModel build_model(int n_spins, std::uint64_t seed) {
  if (n_spins < 3) throw std::invalid_argument("build_model: need at least 3 spins");
  if (n_spins > 10) throw std::invalid_argument("build_model: at most 10 spins supported");
  SplitMix64 rng(seed);
  Coefficients k = Coefficients::zeros(n_spins);
  for (int m = 0; m < n_spins; ++m) {
    for (int g = 0; g < 3; ++g) k.b[static_cast<size_t>(m)][static_cast<size_t>(g)] = rng.uniform(-0.5, 0.5);
  }
  for (int m = 0; m < n_spins; ++m) {
    for (int n = m + 1; n < n_spins; ++n) {
      for (int gm = 0; gm < 3; ++gm) {
        for (int gn = 0; gn < 3; ++gn) k.pair(m, n, gm, gn) = rng.uniform(-0.5, 0.5);
      }
    }
  }
  return model_from_coefficients(std::move(k), seed);
}

SpinBathModel model_from_coefficients(Coefficients coeffs, std::uint64_t seed) {
  const int n = coeffs.n_spins;
  if (n < 3 || n > 10) throw std::invalid_argument("model: n_spins must be in [3, 10]");
  if (coeffs.b.size() != static_cast<size_t>(n) || coeffs.c.size() != static_cast<size_t>(n * n * 9)) {
    throw std::invalid_argument("model: coefficient arrays have the wrong size");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<std::array<CMat, 3>> sigma(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    for (int g = 0; g < 3; ++g) sigma[static_cast<size_t>(m)][static_cast<size_t>(g)] = pauli_on(g + 1, m, n);
  }
  CMat h = CMat::Zero(dim, dim);
  for (int m = 0; m < n; ++m) {
    for (int g = 0; g < 3; ++g) {
      h += coeffs.b[static_cast<size_t>(m)][static_cast<size_t>(g)] * sigma[static_cast<size_t>(m)][static_cast<size_t>(g)];
    }
  }
  for (int m = 0; m < n; ++m) {
    for (int q = m + 1; q < n; ++q) {
      for (int gm = 0; gm < 3; ++gm) {
        for (int gn = 0; gn < 3; ++gn) {
          const double v = coeffs.pair(m, q, gm, gn);
          if (v == 0.0) continue;
          h += v * (sigma[static_cast<size_t>(m)][static_cast<size_t>(gm)] * sigma[static_cast<size_t>(q)][static_cast<size_t>(gn)]);
        }
      }
    }
  }
  SpinBathModel model;
  model.seed = seed;
  model.coeffs = std::move(coeffs);
  model.eig = herm_eig(h);
  model.h_full = std::move(h);
  return model;
}

std::string model_to_json(const SpinBathModel& model) {
  const int n = model.n_spins();
  nlohmann::json j;
  j["n_spins"] = n;
  j["seed"] = model.seed;
  j["b"] = model.coeffs.b;
  nlohmann::json c = nlohmann::json::array();
  for (int m = 0; m < n; ++m) {
    nlohmann::json row = nlohmann::json::array();
    for (int q = 0; q < n; ++q) {
      nlohmann::json block = nlohmann::json::array();
      for (int gm = 0; gm < 3; ++gm) {
        block.push_back({model.coeffs.pair(m, q, gm, 0), model.coeffs.pair(m, q, gm, 1),
                         model.coeffs.pair(m, q, gm, 2)});
      }
      row.push_back(block);
    }
    c.push_back(row);
  }
  j["c"] = c;
  return j.dump(1);
}

SpinBathModel model_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int n = j.at("n_spins").get<int>();
  if (n < 3 || n > 10) throw std::invalid_argument("model json: n_spins must be in [3, 10]");
  Coefficients k = Coefficients::zeros(n);
  k.b = j.at("b").get<std::vector<std::array<double, 3>>>();
  const auto& c = j.at("c");
  if (c.size() != static_cast<size_t>(n)) throw std::invalid_argument("model json: c has wrong shape");
  for (int m = 0; m < n; ++m) {
    for (int q = 0; q < n; ++q) {
      for (int gm = 0; gm < 3; ++gm) {
        for (int gn = 0; gn < 3; ++gn) {
          const double v = c.at(static_cast<size_t>(m)).at(static_cast<size_t>(q)).at(static_cast<size_t>(gm)).at(static_cast<size_t>(gn)).get<double>();
          if (q <= m && v != 0.0) {
            throw std::invalid_argument("model json: couplings must have m < n");
          }
          k.pair(m, q, gm, gn) = v;
        }
      }
    }
  }
  return model_from_coefficients(std::move(k), j.value("seed", std::uint64_t{0}));
}

CVec haar_state(Eigen::Index dim, std::uint64_t seed) {
  SplitMix64 rng(seed);
  CVec v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(k) = Complex{re, im};
  }
  return v / v.norm();
}

JointState initial_joint_state(const SystemState& sys, int n_bath_spins, std::uint64_t bath_seed) {
  if (n_bath_spins < 0) throw std::invalid_argument("initial_joint_state: negative bath size");
  return initial_joint_state(sys, haar_state(Eigen::Index{1} << n_bath_spins, bath_seed));
}

JointState initial_joint_state(const SystemState& sys, const CVec& bath) {
  if (std::abs(bath.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("initial_joint_state: bath state must be normalised");
  }
  const Eigen::Index nb = bath.size();
  CVec psi(kSysDim * nb);
  for (Eigen::Index s = 0; s < kSysDim; ++s) psi.segment(s * nb, nb) = sys.amplitudes(s) * bath;
  return JointState{psi / psi.norm()};
}

SystemState random_protected_state(std::uint64_t seed, const BasisConvention& basis) {
  const CVec ab = haar_state(2, seed);
  return SystemState{ab(0) * basis.ket(0) + ab(1) * basis.ket(1)};
}

SystemState random_system_state(std::uint64_t seed) { return SystemState{haar_state(kSysDim, seed)}; }

}  // namespace nudd
