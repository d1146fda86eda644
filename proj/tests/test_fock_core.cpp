#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "nclass/errors.hpp"
#include "nclass/fock_core.hpp"
#include "test_helpers.hpp"

using namespace nclass;
using namespace nclass::test;

namespace {
constexpr double k_pi = 3.14159265358979323846;

void check_state_invariants(const DensityMatrix& rho, double psd_tol = 1e-10) {
  CHECK(hermiticity_defect(rho) < 1e-14);
  CHECK(std::abs(rho.elements.trace().real() - 1.0) < 1e-12);
  CHECK(smallest_eigenvalue(rho) > -psd_tol);
  CHECK(rho.tail_mass >= 0.0);
}
}  // namespace

TEST_CASE("make_fock basics") {
  const DensityMatrix vac = make_fock(0, 4);
  for (int i = 0; i < 4; ++i)
    CHECK(vac.elements(i, i).real() == (i == 0 ? 1.0 : 0.0));
  const DensityMatrix two = make_fock(2, 4);
  CHECK(two.elements(2, 2).real() == 1.0);
  CHECK_THROWS_AS(make_fock(5, 4), std::out_of_range);
  CHECK_THROWS_AS(make_fock(-1, 4), std::invalid_argument);
  check_state_invariants(vac);
  check_state_invariants(two);
}

TEST_CASE("make_coherent against the Poisson oracle") {
  const DensityMatrix vac = make_coherent({0.0, 0.0}, 8);
  CHECK((vac.elements - make_fock(0, 8).elements).cwiseAbs().maxCoeff() < 1e-15);

  const DensityMatrix coh = make_coherent({1.0, 0.0}, 32);
  const PhotonStatistics stats = photon_statistics(coh);
  for (int n = 0; n < 32; ++n)
    CHECK(std::abs(stats.probs[n] - poisson_pmf(1.0, n)) < 1e-12);
  check_state_invariants(coh);

  CHECK_THROWS_AS(make_coherent({10.0, 0.0}, 16), TruncationError);
}

TEST_CASE("make_thermal against the geometric oracle") {
  const DensityMatrix vac = make_thermal(0.0, 8);
  CHECK(vac.elements(0, 0).real() == 1.0);

  const DensityMatrix th = make_thermal(1.0, 128);
  const PhotonStatistics stats = photon_statistics(th);
  CHECK(std::abs(stats.probs[0] - 0.5) < 1e-12);
  for (int n = 0; n + 1 < 40; ++n)
    CHECK(std::abs(stats.probs[n + 1] / stats.probs[n] - 0.5) < 1e-12);
  check_state_invariants(th);

  CHECK_THROWS_AS(make_thermal(-0.5, 16), std::domain_error);
}

TEST_CASE("make_spats against the photon-addition oracle") {
  const int dim = 128;
  const DensityMatrix spats = make_spats(1.0, 1.0, dim);
  const PhotonStatistics stats = photon_statistics(spats);
  CHECK(stats.probs[0] == 0.0);
  CHECK(std::abs(stats.probs[1] - 0.25) < 1e-12);
  // closed form p_n = n nbar^{n-1} / (1+nbar)^{n+1}
  for (int n = 0; n < 40; ++n)
    CHECK(std::abs(stats.probs[n] - spats_pmf(1.0, n)) < 1e-12);

  // independent explicit matrix construction a^dag rho_th a
  const DensityMatrix th = make_thermal(1.0, dim);
  Eigen::MatrixXcd added = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n)
    added(n, n) = double(n) * th.elements(n - 1, n - 1);
  added /= added.trace().real();
  CHECK((spats.elements - added).cwiseAbs().maxCoeff() < 1e-12);

  check_state_invariants(spats);
  CHECK_THROWS_AS(make_spats(1.0, 1.5, dim), std::domain_error);
  CHECK_THROWS_AS(make_spats(-1.0, 0.5, dim), std::domain_error);
}

TEST_CASE("make_spats with loss matches the binomial-mixing oracle") {
  const int dim = 96;
  const DensityMatrix lossy = make_spats(1.0, 0.5, dim);
  const PhotonStatistics stats = photon_statistics(lossy);
  CHECK(stats.probs[0] > 0.0);

  std::vector<double> exact(dim);
  for (int n = 0; n < dim; ++n) exact[n] = spats_pmf(1.0, n);
  const std::vector<double> mixed = lossy_pmf(exact, 0.5);
  for (int n = 0; n < dim; ++n)
    CHECK(std::abs(stats.probs[n] - mixed[n]) < 1e-12);
  CHECK(stats.deficit() <= lossy.tail_mass + 1e-12);
  check_state_invariants(lossy);
}

TEST_CASE("apply_loss identity, single photon, and coherent thinning") {
  const DensityMatrix one = make_fock(1, 8);
  const DensityMatrix same = apply_loss(one, 1.0);
  CHECK((same.elements - one.elements).cwiseAbs().maxCoeff() < 1e-14);

  const DensityMatrix half = apply_loss(one, 0.5);
  CHECK(std::abs(half.elements(0, 0).real() - 0.5) < 1e-14);
  CHECK(std::abs(half.elements(1, 1).real() - 0.5) < 1e-14);
  CHECK(std::abs(half.elements.cwiseAbs().sum() - 1.0) < 1e-13);

  // Poisson thinning: coherent alpha -> coherent sqrt(eta) alpha
  const ComplexPoint alpha{1.2, 0.3};
  const DensityMatrix thin = apply_loss(make_coherent(alpha, 48), 0.7);
  const DensityMatrix expect = make_coherent(std::sqrt(0.7) * alpha, 48);
  CHECK((thin.elements - expect.elements).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS_AS(apply_loss(one, -0.1), std::domain_error);
  CHECK_THROWS_AS(apply_loss(one, 1.1), std::domain_error);
}

TEST_CASE("apply_loss preserves trace and commutes with convex mixing") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double eta = 0.2 + 0.6 * unif(rng);
    const double p = unif(rng);
    const DensityMatrix a = make_coherent({1.5 * unif(rng), -unif(rng)}, 40);
    const DensityMatrix b = make_thermal(unif(rng), 40);
    const DensityMatrix mixed = mix({{p, a}, {1.0 - p, b}});

    const DensityMatrix lhs = apply_loss(mixed, eta);
    const DensityMatrix rhs =
        mix({{p, apply_loss(a, eta)}, {1.0 - p, apply_loss(b, eta)}});
    CHECK((lhs.elements - rhs.elements).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(lhs.elements.trace().real() - 1.0) < 1e-12);
    check_state_invariants(lhs);
  }
}

TEST_CASE("displace_state identities and oracles") {
  const DensityMatrix th = make_thermal(0.5, 64);
  const DensityMatrix same = displace_state(th, {0.0, 0.0});
  CHECK((same.elements - th.elements).cwiseAbs().maxCoeff() == 0.0);

  // vacuum displaced by alpha has Poisson(|alpha|^2) statistics
  const ComplexPoint alpha{0.9, -0.7};
  const DensityMatrix moved = displace_state(make_fock(0, 64), alpha);
  const PhotonStatistics stats = photon_statistics(moved);
  for (int n = 0; n < 30; ++n)
    CHECK(std::abs(stats.probs[n] - poisson_pmf(std::norm(alpha), n)) < 1e-10);

  // displacement followed by its inverse
  const DensityMatrix back = displace_state(moved, -alpha);
  CHECK((back.elements - make_fock(0, 64).elements).cwiseAbs().maxCoeff() < 1e-9);

  CHECK_THROWS_AS(displace_state(make_fock(0, 16), {4.0, 0.0}), TruncationError);
}

TEST_CASE("displace_state preserves the eigenvalue spectrum") {
  const DensityMatrix rho =
      mix({{0.6, make_thermal(0.4, 96)}, {0.4, make_fock(1, 96)}});
  const DensityMatrix moved = displace_state(rho, {0.8, 0.5});
  REQUIRE(moved.tail_mass < 1e-10);
  const auto before = eigenvalues_sorted(rho);
  const auto after = eigenvalues_sorted(moved);
  for (std::size_t i = 0; i < before.size(); ++i)
    CHECK(std::abs(before[i] - after[i]) < 1e-8);
}

TEST_CASE("photon_statistics rejects genuine negativity and clamps roundoff") {
  DensityMatrix bad;
  bad.elements = Eigen::MatrixXcd::Zero(4, 4);
  bad.elements(0, 0) = 1.0 + 1e-6;
  bad.elements(1, 1) = -1e-6;
  CHECK_THROWS_AS(photon_statistics(bad), NegativityError);

  DensityMatrix tiny;
  tiny.elements = Eigen::MatrixXcd::Zero(4, 4);
  tiny.elements(0, 0) = 1.0 + 1e-13;
  tiny.elements(1, 1) = -1e-13;
  const PhotonStatistics stats = photon_statistics(tiny);
  CHECK(stats.probs[1] == 0.0);
}

TEST_CASE("char_function closed forms and symmetry") {
  const DensityMatrix th = make_thermal(0.8, 160);
  const DensityMatrix coh = make_coherent({0.7, 0.4}, 48);

  CHECK(std::abs(char_function(th, {0.0, 0.0}).real() - 1.0) < 1e-13);
  CHECK(std::abs(char_function(coh, {0.0, 0.0}).real() - 1.0) < 1e-13);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  for (int i = 0; i < 12; ++i) {
    const ComplexPoint beta{unif(rng), unif(rng)};
    // thermal: e^{-nbar |beta|^2}
    CHECK(std::abs(char_function(th, beta) -
                   std::exp(-0.8 * std::norm(beta))) < 1e-9);
    // coherent: e^{beta alpha* - beta* alpha}, modulus one
    const ComplexPoint alpha{0.7, 0.4};
    const Complex expect =
        std::exp(beta * std::conj(alpha) - std::conj(beta) * alpha);
    CHECK(std::abs(char_function(coh, beta) - expect) < 1e-10);
    CHECK(std::abs(std::abs(char_function(coh, beta)) - 1.0) < 1e-10);
    // Hermitian symmetry
    CHECK(std::abs(char_function(th, -beta) -
                   std::conj(char_function(th, beta))) < 1e-12);
    // Cauchy-Schwarz bound
    CHECK(std::abs(char_function(th, beta)) <=
          std::exp(0.5 * std::norm(beta)) + 1e-12);
  }

  CHECK_THROWS_AS(char_function(th, {38.0, 0.0}), RangeError);
}

TEST_CASE("char_function stays bounded by one on coherent mixtures") {
  const DensityMatrix rho = mix({{0.35, make_coherent({0.4, 0.9}, 56)},
                                 {0.25, make_coherent({-1.1, 0.2}, 56)},
                                 {0.40, make_coherent({0.0, -0.6}, 56)}});
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int i = 0; i < 40; ++i) {
    const ComplexPoint beta{unif(rng), unif(rng)};
    CHECK(std::abs(char_function(rho, beta)) <= 1.0 + 1e-9);
  }
}

TEST_CASE("wigner values for vacuum and Fock states") {
  CHECK(std::abs(wigner(make_fock(0, 16), {0.0, 0.0}) - 2.0 / k_pi) < 1e-10);
  CHECK(std::abs(wigner(make_fock(1, 24), {0.0, 0.0}) + 2.0 / k_pi) < 1e-6);
  // Fock-state oracle W_n(alpha) = (2/pi)(-1)^n e^{-2|a|^2} L_n(4|a|^2)
  const ComplexPoint a{0.7, 0.2};
  const double oracle = (2.0 / k_pi) * std::exp(-2.0 * std::norm(a)) *
                        laguerre(2, 4.0 * std::norm(a));
  CHECK(std::abs(wigner(make_fock(2, 32), a) - oracle) < 1e-7);
}

TEST_CASE("wigner_grid locates the vacuum peak and stays positive") {
  const WignerGrid grid = wigner_grid(make_fock(0, 16), 2.0, 21);
  CHECK(grid.min_value > -1e-9);
  double max_val = -1.0;
  ComplexPoint at;
  for (int j = 0; j < 21; ++j)
    for (int i = 0; i < 21; ++i)
      if (grid.values[std::size_t(j) * 21 + i] > max_val) {
        max_val = grid.values[std::size_t(j) * 21 + i];
        at = {grid.re_axis[i], grid.im_axis[j]};
      }
  CHECK(std::abs(at) < 1e-12);
  CHECK(std::abs(max_val - 2.0 / k_pi) < 1e-7);
}

TEST_CASE("displacement matrix is unitary on the bulk and inverts by sign") {
  const int dim = 48;
  const ComplexPoint alpha{1.3, -0.8};
  const Eigen::MatrixXcd d = displacement_matrix(dim, alpha);
  const Eigen::MatrixXcd dagger_vs_negative =
      d.adjoint() - displacement_matrix(dim, -alpha);
  CHECK(dagger_vs_negative.cwiseAbs().maxCoeff() < 1e-14);

  // truncation spoils unitarity only near the edge; the first third of the
  // matrix is many sigma away from the missing rows
  const Eigen::MatrixXcd should_be_identity = d.adjoint() * d;
  for (int m = 0; m < dim / 3; ++m)
    for (int n = 0; n < dim / 3; ++n) {
      const double expect = m == n ? 1.0 : 0.0;
      CHECK(std::abs(should_be_identity(m, n) - expect) < 1e-9);
    }

  CHECK((displacement_matrix(8, {0.0, 0.0}) -
         Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
}
