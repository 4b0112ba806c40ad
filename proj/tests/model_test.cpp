#include "nudd/model.hpp"

#include <cmath>
#include <set>

#include "gtest/gtest.h"
#include "nudd/rng.hpp"
#include "oracle.hpp"

using namespace nudd;

TEST(rng, splitmix64_reference_stream) {
  SplitMix64 g(1234567);
  const std::uint64_t expected[] = {6457827717110365317ULL, 3203168211198807973ULL,
                                    9817491932198370423ULL, 4593380528125082431ULL,
                                    16408922859458223821ULL};
  for (std::uint64_t e : expected) EXPECT_EQ(g.next(), e);
}

TEST(rng, uniform_range_and_mean) {
  SplitMix64 g(99);
  double sum = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const double u = g.uniform(-0.5, 0.5);
    ASSERT_GE(u, -0.5);
    ASSERT_LT(u, 0.5);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
}

TEST(rng, normal_moments) {
  SplitMix64 g(7);
  double s1 = 0.0;
  double s2 = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const double x = g.normal();
    s1 += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.03);
  EXPECT_NEAR(s2 / n, 1.0, 0.04);
}

TEST(rng, derive_seed_is_pure_and_separates_streams) {
  EXPECT_EQ(derive_seed(5, "model", 3), derive_seed(5, "model", 3));
  std::set<std::uint64_t> seen;
  for (const char* purpose : {"model", "state", "bath"}) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      for (std::uint64_t j = 0; j < 10; ++j) seen.insert(derive_seed(20100, purpose, i, j));
    }
  }
  EXPECT_EQ(seen.size(), 300u);
  EXPECT_NE(derive_seed(1, "model", 0), derive_seed(2, "model", 0));
}

TEST(model, five_spin_hamiltonian_shape) {
  const SpinBathModel m = build_model(5, 42);
  EXPECT_EQ(m.dim(), 32);
  EXPECT_EQ(m.bath_dim(), 8);
  EXPECT_EQ(m.n_bath_spins(), 3);
  EXPECT_LE(hermiticity_error(m.h_full), 1e-14);
  for (const auto& b : m.coeffs.b) {
    for (double v : b) {
      EXPECT_GE(v, -0.5);
      EXPECT_LT(v, 0.5);
    }
  }
  EXPECT_THROW(build_model(2, 1), std::invalid_argument);
}

TEST(model, same_seed_same_hamiltonian) {
  const SpinBathModel a = build_model(5, 77);
  const SpinBathModel b = build_model(5, 77);
  EXPECT_EQ(max_abs(a.h_full - b.h_full), 0.0);
  EXPECT_EQ(a.coeffs.c, b.coeffs.c);
  EXPECT_GT(max_abs(a.h_full - build_model(5, 78).h_full), 0.0);
}

TEST(model, zero_coefficients) {
  const SpinBathModel m = model_from_coefficients(Coefficients::zeros(5));
  EXPECT_EQ(max_abs(m.h_full), 0.0);
  for (double tau : {0.0, 0.1, 3.0}) EXPECT_LT(max_abs(propagator(m.eig, tau) - oracle::id(32)), 1e-15);
}

TEST(model, hamiltonian_matches_direct_sum) {
  const int n = 5;
  const SpinBathModel m = build_model(n, 9);
  oracle::Mat h = oracle::Mat::Zero(32, 32);
  for (int s = 0; s < n; ++s) {
    for (int g = 0; g < 3; ++g) h += m.coeffs.b[static_cast<size_t>(s)][static_cast<size_t>(g)] * oracle::pauli_site(g, s, n);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int ga = 0; ga < 3; ++ga) {
        for (int gb = 0; gb < 3; ++gb) {
          h += m.coeffs.pair(a, b, ga, gb) * oracle::pauli_site(ga, a, n) * oracle::pauli_site(gb, b, n);
        }
      }
    }
  }
  EXPECT_LT(max_abs(m.h_full - h), 1e-14);
}

TEST(model, pauli_projection_recovers_coefficients) {
  const int n = 5;
  const SpinBathModel m = build_model(n, 10);
  const double norm = 32.0;
  for (int s = 0; s < n; ++s) {
    for (int g = 0; g < 3; ++g) {
      const double got = (oracle::pauli_site(g, s, n) * m.h_full).trace().real() / norm;
      EXPECT_NEAR(got, m.coeffs.b[static_cast<size_t>(s)][static_cast<size_t>(g)], 1e-12);
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int ga = 0; ga < 3; ++ga) {
        for (int gb = 0; gb < 3; ++gb) {
          const oracle::Mat p = oracle::pauli_site(ga, a, n) * oracle::pauli_site(gb, b, n);
          EXPECT_NEAR((p * m.h_full).trace().real() / norm, m.coeffs.pair(a, b, ga, gb), 1e-12);
        }
      }
    }
  }
}

TEST(model, energy_bound) {
  const SpinBathModel m = build_model(5, 11);
  double bound = 0.0;
  for (const auto& b : m.coeffs.b) {
    for (double v : b) bound += std::abs(v);
  }
  for (double v : m.coeffs.c) bound += std::abs(v);
  EXPECT_LE(m.eig.values.cwiseAbs().maxCoeff(), bound);
}

TEST(model, json_round_trip) {
  const SpinBathModel m = build_model(5, 12);
  const SpinBathModel back = model_from_json(model_to_json(m));
  EXPECT_EQ(back.seed, m.seed);
  EXPECT_EQ(back.coeffs.b, m.coeffs.b);
  EXPECT_EQ(back.coeffs.c, m.coeffs.c);
  EXPECT_EQ(max_abs(back.h_full - m.h_full), 0.0);
  EXPECT_THROW(model_from_json("{}"), std::exception);
  EXPECT_THROW(model_from_json("not json"), std::exception);
}

TEST(model, general_spin_counts) {
  const SpinBathModel m = build_model(4, 13);
  EXPECT_EQ(m.dim(), 16);
  EXPECT_EQ(m.bath_dim(), 4);
}

TEST(model, joint_state_with_forced_bath) {
  const SystemState sys = SystemState::from_amplitudes(oracle::ket(0));
  oracle::Vec bath = oracle::Vec::Zero(8);
  bath(0) = 1.0;
  const JointState j = initial_joint_state(sys, bath);
  EXPECT_EQ(j.amplitudes(0), Complex(1.0));
  EXPECT_NEAR(j.amplitudes.norm(), 1.0, 1e-15);
}

TEST(model, joint_state_is_a_normalised_product) {
  const SystemState sys = random_protected_state(3, default_basis());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const JointState j = initial_joint_state(sys, 3, seed);
    EXPECT_NEAR(j.amplitudes.norm(), 1.0, 1e-12);
    const CMat reduced = oracle::partial_trace(j.amplitudes * j.amplitudes.adjoint(), 4, 8);
    EXPECT_LT(max_abs(reduced - sys.projector()), 1e-14);
  }
}

TEST(model, protected_state_distribution) {
  const auto basis = default_basis();
  double mean = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const SystemState s = random_protected_state(seed, basis);
    const Complex alpha = basis.ket(0).dot(s.amplitudes);
    const Complex beta = basis.ket(1).dot(s.amplitudes);
    EXPECT_NEAR(std::norm(alpha) + std::norm(beta), 1.0, 1e-12);
    EXPECT_NEAR(s.amplitudes.norm(), 1.0, 1e-12);
    mean += std::norm(alpha);
  }
  EXPECT_NEAR(mean / 1000.0, 0.5, 0.05);
}

TEST(model, full_system_state_distribution) {
  double mean = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const SystemState s = random_system_state(seed);
    EXPECT_NEAR(s.amplitudes.norm(), 1.0, 1e-12);
    mean += std::norm(s.amplitudes(2));
  }
  EXPECT_NEAR(mean / 1000.0, 0.25, 0.03);
}

TEST(model, haar_state_is_normalised_and_seeded) {
  const CVec a = haar_state(8, 5);
  EXPECT_NEAR(a.norm(), 1.0, 1e-14);
  EXPECT_EQ((a - haar_state(8, 5)).norm(), 0.0);
  EXPECT_GT((a - haar_state(8, 6)).norm(), 0.0);
}
