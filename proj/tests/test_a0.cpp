#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <random>

#include "amenlab/a0.hpp"

using namespace amenlab;

namespace {

struct Rand {
  std::mt19937 rng;
  explicit Rand(uint32_t seed) : rng(seed) {}
  double real() { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }
  double pos() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

  CXFunction fn(const SpacePtr& sp, int depth) {
    std::vector<Complex> v(sp->dim_at(depth));
    for (auto& z : v) z = Complex(real(), real());
    return CXFunction(sp, depth, std::move(v));
  }

  A0Element element(const SpacePtr& sp, const std::vector<Word>& window, int depth,
                    int terms) {
    A0Element f(sp);
    for (int t = 0; t < terms; ++t) {
      const Word& g = window[rng() % window.size()];
      f += A0Element(sp, {{g, fn(sp, depth)}});
    }
    return f;
  }
};

// direct double sum from the convolution formula, finite spaces
A0Element naive_convolve(const A0Element& f1, const A0Element& f2) {
  const auto& sp = f1.space();
  const auto& G = sp->group();
  A0Element out(sp);
  for (const auto& [h, p] : f1.coeff())
    for (const auto& [k, q] : f2.coeff()) {
      Word g = G->multiply(h, k);
      std::vector<Complex> v(sp->num_points());
      Word hinv = G->inverse(h);
      for (int x = 0; x < sp->num_points(); ++x)
        v[x] = p.value_at_point(x) * q.value_at_point(sp->act_point(hinv, x));
      out += A0Element(sp, {{g, CXFunction(sp, 0, std::move(v))}});
    }
  return out;
}

SpacePtr four_point_space() {
  auto F2 = Group::free_group(2);
  // a = 4-cycle, b = transposition
  std::vector<std::vector<int>> perms = {
      {1, 2, 3, 0}, {3, 0, 1, 2},  // a, a'
      {1, 0, 2, 3}, {1, 0, 2, 3},  // b, b'
  };
  return Space::finite_points(F2, perms);
}

}  // namespace

TEST_CASE("delta identities") {
  auto sp = four_point_space();
  auto G = sp->group();
  Rand rnd(21);
  auto window = G->ball(2);
  for (int trial = 0; trial < 30; ++trial) {
    Word g = window[rnd.rng() % window.size()];
    Word h = window[rnd.rng() % window.size()];
    auto dgh = convolve(A0Element::delta(sp, g), A0Element::delta(sp, h));
    CHECK(a0_distance(dgh, A0Element::delta(sp, G->multiply(g, h))) == 0.0);

    auto p = rnd.fn(sp, 0);
    auto conj = convolve(convolve(A0Element::delta(sp, g), A0Element::embed(p)),
                         A0Element::delta(sp, G->inverse(g)));
    CHECK(a0_distance(conj, A0Element::embed(p.translated(g))) < 1e-14);

    auto f = rnd.element(sp, window, 0, 3);
    CHECK(a0_distance(convolve(A0Element::delta(sp, G->identity()), f), f) < 1e-14);
    CHECK(a0_distance(convolve(f, A0Element::delta(sp, G->identity())), f) < 1e-14);
  }
}

TEST_CASE("convolution against the naive double sum") {
  auto F2 = Group::free_group(2);
  std::vector<std::vector<int>> perms = {
      {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {0, 2, 1}};
  auto sp = Space::finite_points(F2, perms);
  Rand rnd(22);
  auto window = F2->ball(2);
  for (int trial = 0; trial < 100; ++trial) {
    auto f1 = rnd.element(sp, window, 0, 4);
    auto f2 = rnd.element(sp, window, 0, 4);
    CHECK(a0_distance(convolve(f1, f2), naive_convolve(f1, f2)) < 1e-12);
  }
}

TEST_CASE("a0 norm") {
  auto Z = Group::free_abelian(1);
  std::vector<std::vector<int>> perms = {{1, 0}, {1, 0}};
  auto sp = Space::finite_points(Z, perms);
  A0Element f(sp);
  f.set(Z->identity(), CXFunction(sp, 0, {1.0, -2.0}));
  f.set({1}, CXFunction(sp, 0, {3.0, 0.0}));
  CHECK(a0_norm(f) == 4.0);
  CHECK(a0_norm(A0Element::delta(sp, {5})) == 1.0);
  CHECK(a0_norm(A0Element(sp)) == 0.0);
}

TEST_CASE("submultiplicativity and associativity") {
  auto sp = four_point_space();
  auto window = sp->group()->ball(2);
  Rand rnd(23);
  for (int trial = 0; trial < 300; ++trial) {
    auto f1 = rnd.element(sp, window, 0, 3);
    auto f2 = rnd.element(sp, window, 0, 3);
    CHECK(a0_norm(convolve(f1, f2)) <= a0_norm(f1) * a0_norm(f2) + 1e-9);
    auto f3 = rnd.element(sp, window, 0, 3);
    CHECK(a0_distance(convolve(convolve(f1, f2), f3),
                      convolve(f1, convolve(f2, f3))) < 1e-10);
  }
}

TEST_CASE("l1 group ring embeds as constants") {
  auto sp = four_point_space();
  auto G = sp->group();
  Rand rnd(24);
  auto window = G->ball(2);
  for (int trial = 0; trial < 50; ++trial) {
    // constants-only elements: twisted convolution degenerates to l1(Gamma)
    std::map<Word, Complex> c1, c2;
    for (int t = 0; t < 3; ++t) {
      c1[window[rnd.rng() % window.size()]] = Complex(rnd.real(), rnd.real());
      c2[window[rnd.rng() % window.size()]] = Complex(rnd.real(), rnd.real());
    }
    A0Element f1(sp), f2(sp);
    for (auto& [g, z] : c1) f1 += z * A0Element::delta(sp, g);
    for (auto& [g, z] : c2) f2 += z * A0Element::delta(sp, g);
    std::map<Word, Complex> prod;
    for (auto& [g, z] : c1)
      for (auto& [h, w] : c2) prod[G->multiply(g, h)] += z * w;
    A0Element expect(sp);
    for (auto& [g, z] : prod) expect += z * A0Element::delta(sp, g);
    CHECK(a0_distance(convolve(f1, f2), expect) < 1e-12);
  }
}

TEST_CASE("pibar and classification") {
  auto sp = four_point_space();
  auto G = sp->group();
  Rand rnd(25);

  auto dg = A0Element::delta(sp, {1});
  auto c = classify(dg);
  CHECK(c.in_W0);
  CHECK(std::abs(*c.pi_value - 1.0) < 1e-14);
  CHECK(c.in_Z0_plus);
  CHECK_FALSE(c.in_ker_pibar);

  // p.(delta_g - delta_e) telescopes under pibar
  CXFunction p(sp, 0, {0.3, 0.9, 0.1, 0.5});
  auto f = cx_act(p, A0Element::delta(sp, {1}) - A0Element::delta(sp, G->identity()));
  CHECK(pibar(f).sup_norm() < 1e-14);
  auto cf = classify(f);
  CHECK(cf.in_W0);
  CHECK(cf.in_ker_pibar);
  CHECK_FALSE(cf.in_Z0_plus);

  // uniform mean element over a window
  auto window = G->ball(1);
  A0Element m(sp);
  for (const auto& g : window)
    m += Complex(1.0 / window.size()) * A0Element::delta(sp, g);
  auto cm = classify(m);
  CHECK(cm.in_Z0_plus);
  CHECK(std::abs(*cm.pi_value - 1.0) < 1e-12);

  // random element matches direct coefficient sum, and pibar is contractive
  for (int trial = 0; trial < 50; ++trial) {
    auto f1 = rnd.element(sp, window, 0, 3);
    CXFunction s = CXFunction::constant(sp, 0.0);
    for (const auto& [g, q] : f1.coeff()) s += q;
    CHECK((pibar(f1) - s).sup_norm() < 1e-14);
    CHECK(pibar(f1).sup_norm() <= a0_norm(f1) + 1e-12);
  }
}

TEST_CASE("ideal identities under pibar") {
  auto sp = four_point_space();
  auto G = sp->group();
  Rand rnd(26);
  auto window = G->ball(2);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = rnd.element(sp, window, 0, 3);
    // f in ker pibar
    auto p = rnd.fn(sp, 0);
    Word g = window[rnd.rng() % window.size()];
    auto f = cx_act(p, A0Element::delta(sp, g) - A0Element::delta(sp, G->identity()));
    CHECK(pibar(convolve(a, f)).sup_norm() < 1e-10);
    // f' in W0 with constant sum: scalar multiple of a delta
    Complex lam(rnd.real(), rnd.real());
    auto fp = lam * A0Element::delta(sp, g);
    auto lhs = pibar(convolve(a, fp));
    auto rhs = lam * pibar(a);
    CHECK((lhs - rhs).sup_norm() < 1e-10);
  }
}

TEST_CASE("z0 norm formula") {
  auto sp = four_point_space();
  auto G = sp->group();
  Rand rnd(27);
  auto window = G->ball(1);

  A0Element m(sp);
  for (const auto& g : window)
    m += Complex(1.0 / window.size()) * A0Element::delta(sp, g);
  CHECK(z0_norm({m}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z0_norm({m, m}) == doctest::Approx(2.0).epsilon(1e-12));

  for (int trial = 0; trial < 50; ++trial) {
    // random Z0+ parts: nonnegative coefficients with constant sum
    std::vector<A0Element> parts;
    A0Element combo(sp);
    Complex ik(1.0, 0.0);
    for (int k = 0; k < 4; ++k) {
      A0Element f(sp);
      for (int t = 0; t < 2; ++t) {
        Word g = window[rnd.rng() % window.size()];
        f += Complex(rnd.pos()) * A0Element::delta(sp, g);
      }
      parts.push_back(f);
      combo += ik * f;
      ik *= Complex(0.0, 1.0);
    }
    CHECK(z0_norm(parts) >= a0_norm(combo) - 1e-9);
  }
  CHECK_THROWS(z0_norm({Complex(-1.0) * m}));
}

TEST_CASE("group and function actions") {
  auto sp = four_point_space();
  auto G = sp->group();
  Rand rnd(28);
  auto window = G->ball(2);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = rnd.element(sp, window, 0, 3);
    Word g = window[rnd.rng() % window.size()];
    CHECK(a0_distance(gamma_act(g, f), convolve(A0Element::delta(sp, g), f)) < 1e-12);
    CHECK(a0_norm(gamma_act(g, f)) == doctest::Approx(a0_norm(f)).epsilon(1e-12));
    CHECK(a0_distance(gamma_act(G->identity(), f), f) == 0.0);

    auto p = rnd.fn(sp, 0);
    CHECK(a0_distance(cx_act(p, f), convolve(A0Element::embed(p), f)) < 1e-12);
    CHECK(a0_distance(cx_act_right(f, p), convolve(f, A0Element::embed(p))) < 1e-12);
    // compatibility g.(p.(g^-1.f)) = p^g.f
    auto lhs = gamma_act(g, cx_act(p, gamma_act(G->inverse(g), f)));
    auto rhs = cx_act(p.translated(g), f);
    CHECK(a0_distance(lhs, rhs) < 1e-12);
    // contractivity for small p
    auto q = Complex(1.0 / (p.sup_norm() + 1e-9)) * p;
    CHECK(a0_norm(cx_act(q, f)) <= a0_norm(f) + 1e-12);
  }
  CHECK(a0_distance(gamma_act({1}, A0Element::delta(sp, {2})),
                    A0Element::delta(sp, {1, 2})) == 0.0);
}

TEST_CASE("ozawa transform") {
  auto Z = Group::free_abelian(1);
  auto pt = Space::single_point(Z);

  auto zero = A0Element(pt);
  auto v0 = ozawa_mean_from_unit(zero, 0);
  CHECK(v0.size() == 1);
  CHECK(std::abs(v0.at(Z->identity()) - Complex(1.0)) < 1e-14);

  const int n = 8;
  A0Element mean(pt);
  for (int j = 0; j < n; ++j)
    mean += Complex(1.0 / n) * A0Element::delta(pt, {j});
  auto e = A0Element::delta(pt, Z->identity()) - mean;
  auto v = ozawa_mean_from_unit(e, 0);
  Complex total = 0.0;
  for (auto& [g, z] : v) total += z;
  CHECK(std::abs(total - Complex(1.0)) < 1e-12);
  for (int j = 0; j < n; ++j)
    CHECK(std::abs(v.at({j}) - Complex(1.0 / n)) < 1e-14);

  // right-invariance defect 2/n, bounded by the unit defect
  L1Vector shifted = l1_right_translate(Z, v, {1});
  L1Vector diff = shifted;
  for (auto& [g, z] : v) diff[g] -= z;
  CHECK(l1_norm(diff) == doctest::Approx(2.0 / n).epsilon(1e-12));
  double unit_defect = a0_norm(convolve(e, A0Element::delta(pt, {-1})) - e);
  CHECK(l1_norm(diff) <= unit_defect + 1e-12);

  CHECK_THROWS(ozawa_mean_from_unit(mean, 0));
}

TEST_CASE("unit from mean and character bounds") {
  auto Z = Group::free_abelian(1);
  auto pt = Space::single_point(Z);
  const int n = 10;
  A0Element mean(pt);
  for (int j = 0; j < n; ++j)
    mean += Complex(1.0 / n) * A0Element::delta(pt, {j});

  auto u = unit_from_mean(mean);
  CHECK(pibar(u).sup_norm() < 1e-12);
  CHECK(a0_norm(unit_from_mean(A0Element::delta(pt, Z->identity()))) == 0.0);

  auto d1 = A0Element::delta(pt, {1});
  auto de = A0Element::delta(pt, Z->identity());
  CHECK(a0_norm(convolve(d1 - de, mean)) == doctest::Approx(2.0 / n).epsilon(1e-12));

  auto sp = four_point_space();
  Rand rnd(29);
  auto window = sp->group()->ball(1);
  for (int trial = 0; trial < 50; ++trial) {
    A0Element m(sp);
    std::vector<double> w(window.size());
    double s = 0.0;
    for (auto& x : w) s += (x = rnd.pos() + 1e-3);
    for (size_t i = 0; i < window.size(); ++i)
      m += Complex(w[i] / s) * A0Element::delta(sp, window[i]);
    auto p = rnd.fn(sp, 0);
    for (const auto& g : sp->group()->generators()) {
      auto b = character_transform_bound(m, p, g);
      CHECK(b.lhs <= b.rhs + 1e-10);
    }
  }
  CHECK_THROWS(unit_from_mean(Complex(2.0) * mean));
}

TEST_CASE("diagonal defects") {
  auto Z3 = Group::cyclic(3);
  auto X = Space::group_on_itself(Z3);
  std::vector<TensorTerm> diag;
  for (int i = 0; i < 3; ++i)
    diag.emplace_back(Complex(1.0 / 3) * A0Element::delta(X, {i}),
                      A0Element::delta(X, Z3->inverse({i})));
  for (int i = 0; i < 3; ++i) {
    auto dd = diagonal_defect(diag, A0Element::delta(X, {i}));
    CHECK(dd.commutator_defect < 1e-12);
    CHECK(dd.unit_defect < 1e-12);
  }

  auto sp = four_point_space();
  auto G = sp->group();
  std::vector<TensorTerm> simple = {
      {A0Element::delta(sp, G->identity()), A0Element::delta(sp, G->identity())}};
  auto d1 = diagonal_defect(simple, A0Element::delta(sp, {1}));
  CHECK(d1.unit_defect < 1e-12);
  CHECK(d1.commutator_defect == doctest::Approx(2.0).epsilon(1e-12));
  auto d2 = diagonal_defect(simple, A0Element::delta(sp, G->identity()));
  CHECK(d2.commutator_defect < 1e-12);
}

TEST_CASE("ker pibar spanned by p(delta_g - delta_e)") {
  auto Z3 = Group::cyclic(3);
  auto X = Space::group_on_itself(Z3);
  auto G = Z3;
  Rand rnd(30);
  // basis of the spanning set over the window {e, g1, g2}
  std::vector<A0Element> basis;
  for (const auto& g : G->generators())
    for (int x = 0; x < 3; ++x) {
      auto p = CXFunction::indicator(X, 0, x);
      auto b = cx_act(p, A0Element::delta(X, g) - A0Element::delta(X, G->identity()));
      basis.push_back(b);
      basis.push_back(Complex(0.0, 1.0) * b);  // real solver, complex scalars
    }
  auto vectorize = [&](const A0Element& f) {
    Eigen::VectorXd v(3 * 3 * 2);
    int idx = 0;
    for (int gi = 0; gi < 3; ++gi)
      for (int x = 0; x < 3; ++x) {
        Complex z = f.at({gi}).value_at_point(x);
        v(idx++) = z.real();
        v(idx++) = z.imag();
      }
    return v;
  };
  Eigen::MatrixXd A(18, (int)basis.size());
  for (size_t i = 0; i < basis.size(); ++i) A.col((int)i) = vectorize(basis[i]);
  for (int trial = 0; trial < 20; ++trial) {
    // random ker-pibar element: rows sum to zero at every point
    A0Element f(X);
    auto p = rnd.fn(X, 0);
    auto q = rnd.fn(X, 0);
    f += cx_act(p, A0Element::delta(X, {1}) - A0Element::delta(X, G->identity()));
    f += cx_act(q, A0Element::delta(X, {2}) - A0Element::delta(X, G->identity()));
    REQUIRE(pibar(f).sup_norm() < 1e-12);
    Eigen::VectorXd b = vectorize(f);
    Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
    CHECK((A * sol - b).norm() < 1e-9);
  }
}

TEST_CASE("serialization round trip") {
  auto sp = four_point_space();
  Rand rnd(31);
  auto f = rnd.element(sp, sp->group()->ball(2), 0, 4);
  auto j = a0_to_json(f);
  auto g = a0_from_json(j);
  CHECK(g.coeff().size() == f.coeff().size());
  // reserialization is exact
  CHECK(a0_to_json(g) == j);
  for (const auto& [w, p] : f.coeff()) CHECK((g.at(w) - p).sup_norm() == 0.0);

  auto B = Space::boundary(Group::free_group(2));
  A0Element h(B);
  h.set({1}, CXFunction::cylinder_indicator(B, {1, 2}));
  h.set({-2}, rnd.fn(B, 2));
  auto j2 = a0_to_json(h);
  auto h2 = a0_from_json(j2);
  CHECK(a0_to_json(h2) == j2);
  CHECK(a0_distance(h, h2) == 0.0);
}
