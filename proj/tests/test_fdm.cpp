#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "schro/fdm.hpp"

using namespace schro;

namespace {

oracle::Mat dense(const SparseOperator& s) { return oracle::Mat(s); }

double max_entry(const oracle::Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

oracle::Mat mat2(double a, double b, double c, double d) {
  oracle::Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(Shift, Entries) {
  const oracle::Mat sm = dense(shift(ShiftDirection::Minus, 2));
  EXPECT_LT(max_entry(sm - oracle::shift_minus(4)), 1e-15);
  EXPECT_EQ(sm(0, 1), cplx(1.0));
  EXPECT_EQ(sm(2, 3), cplx(1.0));
  EXPECT_LT(max_entry(dense(shift(ShiftDirection::Plus, 1)) - mat2(0, 0, 1, 0)), 1e-15);
}

TEST(Shift, PlusIsTransposeOfMinus) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_LT(max_entry(dense(shift(ShiftDirection::Plus, n)) - dense(shift(ShiftDirection::Minus, n)).transpose()),
              1e-15);
  }
}

TEST(Shift, TensorTermsSumToShift) {
  for (int n = 1; n <= 4; ++n) {
    oracle::Mat sum_m = oracle::Mat::Zero(1 << n, 1 << n);
    oracle::Mat sum_p = sum_m;
    for (int j = 1; j <= n; ++j) {
      sum_m += dense(s_minus_term(j, n));
      sum_p += dense(s_plus_term(j, n));
    }
    EXPECT_LT(max_entry(sum_m - oracle::shift_minus(1 << n)), 1e-15) << n;
    EXPECT_LT(max_entry(sum_p - oracle::shift_plus(1 << n)), 1e-15) << n;
  }
}

TEST(DiffOp, SmallExamples) {
  const GridSpec one{1, 1, 2.0, Boundary::Dirichlet};  // h = 1
  EXPECT_LT(max_entry(dense(diff_op(DiffKind::Laplacian, Boundary::Dirichlet, one)) - mat2(-2, 1, 1, -2)), 1e-15);
  EXPECT_LT(max_entry(dense(diff_op(DiffKind::Laplacian, Boundary::Periodic, one)) - mat2(-2, 2, 2, -2)), 1e-15);
  const GridSpec two{1, 2, 1.0, Boundary::Dirichlet};  // h = 0.25
  const oracle::Mat f = dense(diff_op(DiffKind::Forward, Boundary::Dirichlet, two));
  EXPECT_EQ(f.row(0), (oracle::Mat(1, 4) << -4, 4, 0, 0).finished());
}

TEST(DiffOp, MatchesEntrywiseOracle) {
  for (int n = 1; n <= 5; ++n) {
    const GridSpec g{1, n, 1.3, Boundary::Dirichlet};
    EXPECT_LT(max_entry(dense(diff_op(DiffKind::Laplacian, Boundary::Dirichlet, g)) -
                        oracle::laplacian_dirichlet(g.points(), g.h())),
              1e-9);
    EXPECT_LT(max_entry(dense(diff_op(DiffKind::Forward, Boundary::Periodic, g)) -
                        oracle::upwind_periodic(g.points(), g.h(), 1.0)),
              1e-12);
    EXPECT_LT(max_entry(dense(diff_op(DiffKind::Backward, Boundary::Periodic, g)) -
                        oracle::upwind_periodic(g.points(), g.h(), -1.0) * -1.0),
              1e-12);
  }
}

TEST(DiffOp, SymmetryProperties) {
  for (int n = 1; n <= 5; ++n) {
    const GridSpec g{1, n, 1.0, Boundary::Periodic};
    const oracle::Mat ld = dense(diff_op(DiffKind::Laplacian, Boundary::Dirichlet, g));
    const oracle::Mat lp = dense(diff_op(DiffKind::Laplacian, Boundary::Periodic, g));
    const oracle::Mat c = dense(diff_op(DiffKind::Central, Boundary::Periodic, g));
    EXPECT_LT(max_entry(ld - ld.transpose()), 1e-15);
    EXPECT_LT(max_entry(lp - lp.transpose()), 1e-15);
    EXPECT_LT(max_entry(c + c.transpose()), 1e-15);
    const oracle::Mat mic = cplx(0.0, -1.0) * c;
    EXPECT_LT(max_entry(mic - mic.adjoint()), 1e-15);
    const SparseOperator s = diff_op(DiffKind::Laplacian, Boundary::Dirichlet, g);
    for (int k = 0; k < s.outerSize(); ++k) {
      int nnz = 0;
      for (SparseOperator::InnerIterator it(s, k); it; ++it) ++nnz;
      EXPECT_LE(nnz, 3);
    }
  }
}

TEST(KronPlace, Placement) {
  oracle::Mat z = mat2(1, 0, 0, -1);
  const SparseOperator zs = z.sparseView();
  EXPECT_LT(max_entry(dense(kron_place(zs, 1, GridSpec{1, 1})) - z), 1e-15);
  EXPECT_LT(max_entry(dense(kron_place(zs, 1, GridSpec{2, 1})) - oracle::kron(oracle::eye(2), z)), 1e-15);
  EXPECT_LT(max_entry(dense(kron_place(zs, 2, GridSpec{2, 1})) - oracle::kron(z, oracle::eye(2))), 1e-15);
  EXPECT_THROW(kron_place(zs, 3, GridSpec{2, 1}), DomainError);
  EXPECT_THROW(kron_place(zs, 0, GridSpec{2, 1}), DomainError);
}

TEST(KronPlace, DifferentDimensionsCommute) {
  const oracle::Mat r = oracle::random_hermitian(4, 9) + cplx(0, 1) * oracle::random_hermitian(4, 10);
  const SparseOperator rs = r.sparseView();
  const GridSpec g{2, 2};
  const oracle::Mat a = dense(kron_place(rs, 1, g));
  const oracle::Mat b = dense(kron_place(rs, 2, g));
  EXPECT_LT(max_entry(a * b - b * a), 1e-12);
  EXPECT_LT(max_entry(a - oracle::place(r, 1, 2)), 1e-15);
  EXPECT_LT(max_entry(b - oracle::place(r, 2, 2)), 1e-15);
}

TEST(HeatGenerator, Examples) {
  EXPECT_LT(max_entry(dense(heat_generator(1.0, GridSpec{1, 1, 2.0})) - mat2(-2, 1, 1, -2)), 1e-15);
  EXPECT_EQ(heat_generator(0.0, GridSpec{1, 2}).nonZeros(), 0);
  const GridSpec g{2, 1, 2.0};
  const oracle::Mat d = oracle::laplacian_dirichlet(2, 1.0);
  EXPECT_LT(max_entry(dense(heat_generator(1.0, g)) - (oracle::place(d, 1, 2) + oracle::place(d, 2, 2))), 1e-15);
  EXPECT_THROW(heat_generator(1.0, GridSpec{1, 2, 1.0, Boundary::Periodic}), DomainError);
}

TEST(HeatGenerator, ThreeDimensionsMatchOracle) {
  const GridSpec g{3, 2, 1.0};
  const oracle::Mat d = oracle::laplacian_dirichlet(4, g.h());
  const oracle::Mat ref = 0.7 * (oracle::place(d, 1, 3) + oracle::place(d, 2, 3) + oracle::place(d, 3, 3));
  EXPECT_LT(max_entry(dense(heat_generator(0.7, g)) - ref), 1e-9);
}

TEST(AdvectionGenerator, Examples) {
  const GridSpec g{1, 1, 2.0, Boundary::Periodic};
  EXPECT_LT(max_entry(dense(advection_generator({1.0}, g)) - mat2(-1, 1, 1, -1)), 1e-15);
  EXPECT_LT(max_entry(dense(advection_generator({-1.0}, g)) - mat2(-1, 1, 1, -1)), 1e-15);
  EXPECT_EQ(advection_generator({0.0}, g).nonZeros(), 0);
  EXPECT_THROW(advection_generator({1.0}, GridSpec{1, 1}), DomainError);
  EXPECT_THROW(advection_generator({1.0, 1.0}, g), DimensionError);
}

TEST(AdvectionGenerator, MixedSignsMatchOracle) {
  const GridSpec g{2, 3, 1.0, Boundary::Periodic};
  const oracle::Mat ref = oracle::place(oracle::upwind_periodic(8, g.h(), 1.5), 1, 2) +
                          oracle::place(oracle::upwind_periodic(8, g.h(), -0.5), 2, 2);
  EXPECT_LT(max_entry(dense(advection_generator({1.5, -0.5}, g)) - ref), 1e-12);
}

TEST(HermitianSplit, Cases) {
  const oracle::Mat h = oracle::random_hermitian(4, 3);
  auto [a1, a2] = hermitian_split(h.sparseView());
  EXPECT_LT(max_entry(dense(a1) - h), 1e-15);
  EXPECT_LT(max_entry(dense(a2)), 1e-15);
  auto [b1, b2] = hermitian_split(oracle::Mat(cplx(0, 1) * h).sparseView());
  EXPECT_LT(max_entry(dense(b1)), 1e-15);
  EXPECT_LT(max_entry(dense(b2) - h), 1e-15);
}

TEST(HermitianSplit, UpwindHalves) {
  for (double a : {1.0, 2.5}) {
    const GridSpec g{1, 3, 1.0, Boundary::Periodic};
    const SparseOperator A = advection_generator({a}, g);
    auto [a1, a2] = hermitian_split(A);
    const oracle::Mat lap = dense(diff_op(DiffKind::Laplacian, Boundary::Periodic, g));
    const oracle::Mat cen = dense(diff_op(DiffKind::Central, Boundary::Periodic, g));
    EXPECT_LT(max_entry(dense(a1) - (a * g.h() / 2.0) * lap), 1e-12);
    EXPECT_LT(max_entry(dense(a2) - (a / cplx(0, 1)) * cen), 1e-12);
    EXPECT_LT(max_entry(dense(a1) + cplx(0, 1) * dense(a2) - dense(A)), 1e-14);
    EXPECT_TRUE(is_hermitian(dense(a1)));
    EXPECT_TRUE(is_hermitian(dense(a2)));
  }
}

TEST(Evolve, ZeroTimeIsIdentity) {
  const GridSpec g{1, 3};
  const ComplexVector u = oracle::random_state(8, 4);
  EXPECT_EQ(evolve_exact(heat_generator(1.0, g), u, 0.0), u);
  EXPECT_EQ(evolve_euler(heat_generator(1.0, g), u, 0.1, 0), u);
}

TEST(Evolve, HeatEigenvector) {
  const GridSpec g{1, 1, 2.0};
  ComplexVector u(2);
  u << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  for (double T : {0.1, 1.0, 3.0}) {
    EXPECT_LT((evolve_exact(heat_generator(1.0, g), u, T) - std::exp(-T) * u).norm(), 1e-13);
  }
}

TEST(Evolve, MatchesTaylorOracle) {
  const GridSpec gh{2, 2, 1.0};
  const GridSpec ga{2, 2, 1.0, Boundary::Periodic};
  const ComplexVector u = oracle::random_state(16, 8);
  const SparseOperator h = heat_generator(0.3, gh);
  const SparseOperator a = advection_generator({1.0, -2.0}, ga);
  EXPECT_LT((evolve_exact(h, u, 0.2) - oracle::expm(0.2 * dense(h)) * u).norm(), 1e-11);
  EXPECT_LT((evolve_exact(a, u, 0.2) - oracle::expm(0.2 * dense(a)) * u).norm(), 1e-11);
  EXPECT_LT(max_entry(expm(dense(a)) - oracle::expm(dense(a))), 1e-11);
}

TEST(Evolve, AdvectionConservesSum) {
  const GridSpec g{1, 4, 1.0, Boundary::Periodic};
  const ComplexVector u = oracle::random_state(16, 2);
  for (double a : {1.0, -0.7}) {
    const ComplexVector v = evolve_exact(advection_generator({a}, g), u, 0.3);
    EXPECT_NEAR(std::abs(v.sum() - u.sum()), 0.0, 1e-10);
  }
}

TEST(Evolve, EulerOneStepAndFirstOrder) {
  const GridSpec g{1, 3, 1.0};
  const SparseOperator A = heat_generator(0.05, g);
  const ComplexVector u = oracle::random_state(8, 6);
  EXPECT_LT((evolve_euler(A, u, 0.01, 1) - (u + 0.01 * (A * u))).norm(), 1e-15);
  const double T = 0.5;
  const ComplexVector ref = evolve_exact(A, u, T);
  std::vector<double> errs;
  for (int r : {50, 100, 200, 400}) errs.push_back((evolve_euler(A, u, T / r, r) - ref).norm());
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double order = std::log2(errs[i - 1] / errs[i]);
    EXPECT_NEAR(order, 1.0, 0.2);
  }
}

TEST(Evolve, DenseCap) {
  EXPECT_THROW(check_dense_cap(Eigen::Index{1} << 13), CapacityError);
  EXPECT_NO_THROW(check_dense_cap(Eigen::Index{1} << 12));
}

TEST(Triplets, Csv) {
  std::ostringstream os;
  write_triplets_csv(shift(ShiftDirection::Minus, 1), os);
  EXPECT_NE(os.str().find("0,1,1,0"), std::string::npos);
}
