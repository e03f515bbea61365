#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nsbm/linalg.hpp"
#include "nsbm/rng.hpp"

using namespace nsbm;

namespace {

SymMatrix random_spd(Rng& rng, int p) {
  Matrix b(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) b(i, j) = rng.normal();
  SymMatrix m(p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      double s = 0.0;
      for (int k = 0; k < p; ++k) s += b(k, i) * b(k, j);
      m.set(i, j, s + (i == j ? static_cast<double>(p) : 0.0));
    }
  return m;
}

double frob(const SymMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("cholesky of the identity is the identity") {
  SymMatrix id(5);
  for (int i = 0; i < 5; ++i) id.set(i, i, 1.0);
  const Matrix l = cholesky(id);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(l(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("cholesky reconstructs random SPD matrices") {
  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const int p = 2 + rng.uniform_int(12);
    const SymMatrix m = random_spd(rng, p);
    const Matrix l = cholesky(m);
    double worst = 0.0;
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        double s = 0.0;
        for (int k = 0; k <= std::min(i, j); ++k) s += l(i, k) * l(j, k);
        worst = std::max(worst, std::fabs(s - m(i, j)));
      }
    CHECK(worst <= 1e-8 * frob(m));
  }
}

TEST_CASE("cholesky rejects non-SPD input") {
  SymMatrix m(2);
  m.set(0, 0, 1.0);
  m.set(1, 1, -1.0);
  CHECK_THROWS(cholesky(m));
  SymMatrix singular(2);
  singular.set(0, 0, 1.0);
  singular.set(0, 1, 1.0);
  singular.set(1, 1, 1.0);
  CHECK_THROWS(cholesky(singular));
}

TEST_CASE("Hilbert 4x4 inverse matches the exact integer inverse") {
  SymMatrix h(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) h.set(i, j, 1.0 / (i + j + 1.0));
  const double exact[4][4] = {{16, -120, 240, -140},
                              {-120, 1200, -2700, 1680},
                              {240, -2700, 6480, -4200},
                              {-140, 1680, -4200, 2800}};
  const SymMatrix inv = invert_spd(h);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(inv(i, j) == doctest::Approx(exact[i][j]).epsilon(1e-6));
}

TEST_CASE("invert_spd satisfies M * inv(M) = I") {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const int p = 3 + rng.uniform_int(15);
    const SymMatrix m = random_spd(rng, p);
    const SymMatrix inv = invert_spd(m);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        double s = 0.0;
        for (int k = 0; k < p; ++k) s += m(i, k) * inv(k, j);
        CHECK(std::fabs(s - (i == j ? 1.0 : 0.0)) <= 1e-6);
      }
  }
}

TEST_CASE("serial and parallel inverses agree bitwise") {
  Rng rng(33);
  const SymMatrix m = random_spd(rng, 17);
  CHECK(invert_spd(m, true) == invert_spd_serial(m));
}

TEST_CASE("jacobi eigenvalues of a 2x2 match the quadratic formula") {
  Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    SymMatrix m(2);
    m.set(0, 0, rng.normal());
    m.set(1, 1, rng.normal());
    m.set(0, 1, rng.normal());
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
    const double disc = std::sqrt(tr * tr / 4.0 - det);
    const std::vector<double> ev = jacobi_eigenvalues(m);
    CHECK(ev[0] == doctest::Approx(tr / 2.0 - disc).epsilon(1e-10));
    CHECK(ev[1] == doctest::Approx(tr / 2.0 + disc).epsilon(1e-10));
  }
}

TEST_CASE("jacobi eigenpairs satisfy M v = lambda v") {
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    SymMatrix m(10);
    for (int i = 0; i < 10; ++i)
      for (int j = i; j < 10; ++j) m.set(i, j, rng.normal());
    Matrix v;
    const std::vector<double> ev = jacobi_eigenvalues(m, &v);
    for (int c = 0; c < 10; ++c) {
      double norm = 0.0;
      for (int i = 0; i < 10; ++i) {
        double mv = 0.0;
        for (int k = 0; k < 10; ++k) mv += m(i, k) * v(k, c);
        const double r = mv - ev[c] * v(i, c);
        norm += r * r;
      }
      CHECK(std::sqrt(norm) <= 1e-8);
    }
  }
}

TEST_CASE("min_eig_sym on a diagonal matrix") {
  SymMatrix m(3);
  m.set(0, 0, 4.0);
  m.set(1, 1, -2.5);
  m.set(2, 2, 7.0);
  CHECK(min_eig_sym(m) == doctest::Approx(-2.5));
  CHECK(min_eig_sym(SymMatrix(4)) == doctest::Approx(0.0));
}

TEST_CASE("gram serial and parallel agree bitwise") {
  Rng rng(66);
  Matrix a(40, 25);
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 25; ++j) a(i, j) = rng.normal();
  CHECK(gram(a, 1.0 / 40, true) == gram_serial(a, 1.0 / 40));
}
