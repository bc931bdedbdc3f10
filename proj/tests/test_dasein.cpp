// Copyright 2026 The Bohrtop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include "doctest.h"

#include "bohrtop/dasein.hpp"
#include "bohrtop/order.hpp"

using namespace bohrtop;
using namespace bohrtop::cstar;
using namespace bohrtop::dasein;

namespace {

CMat sigma_z() {
  CMat m(2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}

CMat random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  CMat a(n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = g(rng);
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = cplx(g(rng), g(rng));
      a(j, i) = std::conj(a(i, j));
    }
  }
  return a;
}

// random context of M_n from a random orthonormal eigenbasis and a random
// partition of the coordinates
Context random_context(std::mt19937_64& rng, int n, const CMat* basis_of = nullptr) {
  CMat u(n);
  if (basis_of) {
    const auto es = jacobi_hermitian(*basis_of);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) u(i, k) = es.vectors[k][i];
  } else {
    const CMat h = random_hermitian(rng, n);
    const auto es = jacobi_hermitian(h);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) u(i, k) = es.vectors[k][i];
  }
  // random partition of the n basis columns
  std::vector<int> label(n);
  int next = 0;
  for (int i = 0; i < n; ++i)
    label[i] = (next > 0 && rng() % 2 == 0) ? static_cast<int>(rng() % next) : next++;
  std::vector<CMat> atoms(next, CMat(n));
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        atoms[label[i]](r, c) += u(r, i) * std::conj(u(c, i));
  return Context(MatrixAlg{{n}}, std::move(atoms));
}

ContextPoset m2_family() {
  return context_poset({bloch_context(0, 0, 1, "C_z"), bloch_context(1, 0, 0, "C_x")});
}

int find_ctx(const ContextPoset& cp, const std::string& name) {
  for (int i = 0; i < cp.size(); ++i)
    if (cp.contexts[i].name == name) return i;
  return -1;
}

}  // namespace

TEST_CASE("inner support worked examples") {
  const MatrixAlg m2{{2}};
  const HermObs sz(m2, sigma_z());
  const Context cz = bloch_context(0, 0, 1, "C_z");
  const Context triv = Context::trivial(m2);

  // sigma_z at q = 1/2 inside C_z supports exactly e_00
  CHECK(inner_support_mask(sz, Rat(1, 2), cz) == Mask{1});
  // at the trivial context only multiples of 1 lie below sigma_z
  CHECK(inner_support_mask(sz, Rat(1, 2), triv) == Mask{0});

  // commuting case is exact: inner = [a - q > 0]
  const HermObs a(m2, cz.projection_of(1));  // e_00 itself
  CHECK(inner_support_mask(a, Rat(1, 2), cz) == Mask{1});
  CHECK(inner_support_mask(a, Rat(-1, 2), cz) == full_mask(2));
}

TEST_CASE("outer support worked examples") {
  const MatrixAlg m2{{2}};
  const HermObs sz(m2, sigma_z());
  const Context cz = bloch_context(0, 0, 1, "C_z");
  CHECK(outer_support_mask(sz, Rat(3, 2), cz) == full_mask(2));
  CHECK(outer_support_mask(sz, Rat(1, 2), cz) == Mask{2});
}

TEST_CASE("commuting-case exactness on rational diagonals") {
  const MatrixAlg m3{{3}};
  const Context c = partition_context(3, {{0}, {1}, {2}});
  std::mt19937_64 rng(7);
  const std::vector<double> vals = {-2, -1, -0.5, 0, 0.5, 1, 2};
  for (int t = 0; t < 200; ++t) {
    CMat m(3);
    for (int i = 0; i < 3; ++i) m(i, i) = vals[rng() % vals.size()];
    const HermObs a(m3, m);
    const Rat q(static_cast<int>(rng() % 9) - 4, 4);
    Mask expect = 0;
    for (int i = 0; i < 3; ++i)
      if (m(i, i).real() > q.value() + Tol::eig) expect |= bit(i);
    CHECK(inner_support_mask(a, q, c) == expect);
    Mask expect_outer = 0;
    for (int i = 0; i < 3; ++i)
      if (m(i, i).real() < q.value() - Tol::eig) expect_outer |= bit(i);
    CHECK(outer_support_mask(a, q, c) == expect_outer);
  }
}

TEST_CASE("randomized soundness: admissible f have [f-q>0] below the inner support") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  int admissible = 0;
  for (int t = 0; admissible < 500 && t < 20000; ++t) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const MatrixAlg alg{{n}};
    const HermObs a(alg, random_hermitian(rng, n));
    const Context c = random_context(rng, n);
    const Rat q(static_cast<int>(rng() % 17) - 8, 8);

    // candidate f = sum (lambda_min_i - |xi_i|) p_i, kept only if f <= a
    CMat f(n);
    for (const CMat& p : c.atoms) {
      const double lmin = compression_spectrum(a.matrix, p).min;
      const double slack = std::abs(g(rng)) + (rng() % 4 == 0 ? 10.0 : 0.0);
      f = f + (lmin - slack) * p;
    }
    if (min_eigenvalue(a.matrix - f) < -Tol::eig) continue;  // not admissible
    ++admissible;
    const Mask fq = inner_support_mask(HermObs(alg, f), q, c);
    const Mask inner = inner_support_mask(a, q, c);
    CHECK((fq & ~inner) == 0);
  }
  CHECK(admissible >= 500);
}

TEST_CASE("antitone in q, monotone in context") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 100; ++t) {
    const int n = 3;
    const MatrixAlg alg{{n}};
    const HermObs a(alg, random_hermitian(rng, n));
    // coarse and fine context over a shared eigenbasis
    const CMat h = random_hermitian(rng, n);
    const auto es = jacobi_hermitian(h);
    CMat u(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) u(i, k) = es.vectors[k][i];
    auto proj_of = [&](std::vector<int> cols) {
      CMat p(n);
      for (int col : cols)
        for (int r = 0; r < n; ++r)
          for (int cc = 0; cc < n; ++cc) p(r, cc) += u(r, col) * std::conj(u(cc, col));
      return p;
    };
    const Context fine(alg, {proj_of({0}), proj_of({1}), proj_of({2})});
    const Context coarse(alg, {proj_of({0, 1}), proj_of({2})});

    const Rat q1(static_cast<int>(rng() % 9) - 4, 4);
    const Rat q2 = q1 + Rat(1 + static_cast<int>(rng() % 4), 4);

    // antitone in q within each context
    for (const Context* c : {&coarse, &fine}) {
      const Mask hi = inner_support_mask(a, q2, *c);
      const Mask lo = inner_support_mask(a, q1, *c);
      CHECK((hi & ~lo) == 0);
    }
    // monotone along refinement: compare as projections
    const CMat pc = coarse.projection_of(inner_support_mask(a, q1, coarse));
    const CMat pf = fine.projection_of(inner_support_mask(a, q1, fine));
    CHECK((pf * pc - pc).frobenius() < Tol::recon);
  }
}

TEST_CASE("dasein open on the sigma_z fixture") {
  const MatrixAlg m2{{2}};
  const HermObs sz(m2, sigma_z());
  const ContextPoset cp = m2_family();
  const int cz = find_ctx(cp, "C_z"), cx = find_ctx(cp, "C_x");

  const bohr::BohrOpen g = dasein_open(sz, RatInterval(Rat(1, 2), Rat(3, 2)), cp);
  CHECK(bohr::valid_open(cp, g));
  CHECK(g[cp.bottom()] == 0);
  CHECK(g[cx] == 0);
  // value e_00 at C_z (whichever atom that is)
  CHECK(cp.contexts[cz].projection_of(g[cz])(0, 0).real() == doctest::Approx(1));
  CHECK(cp.contexts[cz].projection_of(g[cz])(1, 1).real() == doctest::Approx(0));

  // scalars: interval containing the value gives top, interval below gives bottom
  const HermObs half(m2, 0.5 * CMat::identity(2));
  CHECK(dasein_open(half, RatInterval(Rat(0), Rat(1)), cp) == bohr::top_open(cp));
  CHECK(dasein_open(half, RatInterval(Rat(-3), Rat(0)), cp) == bohr::bottom_open(cp));
}

TEST_CASE("dasein opens are monotone in the interval") {
  std::mt19937_64 rng(31);
  const ContextPoset cp = m2_family();
  for (int t = 0; t < 50; ++t) {
    const HermObs a(MatrixAlg{{2}}, random_hermitian(rng, 2));
    const Rat q(static_cast<int>(rng() % 9) - 4, 2);
    const Rat r = q + Rat(1 + static_cast<int>(rng() % 4), 2);
    const RatInterval small(q, r);
    const RatInterval big(q - Rat(1, 2), r + Rat(1, 2));
    const auto gs = dasein_open(a, small, cp);
    const auto gb = dasein_open(a, big, cp);
    CHECK(bohr::valid_open(cp, gs));
    CHECK(bohr::open_leq(cp, gs, gb));
  }
}

TEST_CASE("dasein order check") {
  const MatrixAlg m2{{2}};
  const HermObs sz(m2, sigma_z());
  const HermObs sz1(m2, sigma_z() + CMat::identity(2));
  const ContextPoset cp = context_poset(
      {context_from_obs(sz, "C*(a)"), bloch_context(1, 0, 0, "C_x")});

  SUBCASE("a equals b") {
    const auto rep = dasein_order_check(sz, sz, cp);
    CHECK(rep.ok);
    CHECK(rep.supports_coincide);
    CHECK(rep.norm_difference == doctest::Approx(0));
  }

  SUBCASE("a below a + 1") {
    const auto rep = dasein_order_check(sz, sz1, cp);
    CHECK(rep.ok);
    CHECK_FALSE(rep.supports_coincide);
  }

  SUBCASE("missing generated context is reported") {
    const ContextPoset bad = context_poset({bloch_context(1, 0, 0, "C_x")});
    CHECK_THROWS_AS(dasein_order_check(sz, sz, bad), MissingGeneratedContext);
  }

  SUBCASE("random ordered pairs") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g;
    for (int t = 0; t < 500; ++t) {
      const CMat a = random_hermitian(rng, 2);
      CMat pos = random_hermitian(rng, 2);
      pos = pos * pos;  // positive
      const CMat b = a + pos;
      const HermObs ha(m2, a), hb(m2, b);
      // closure "none": nearly coincident generated contexts would otherwise
      // push the intersection rank decision into its declared error band
      const ContextPoset fam = context_poset(
          {context_from_obs(ha, "C*(a)"), context_from_obs(hb, "C*(b)")},
          ClosurePolicy::none);
      const auto rep = dasein_order_check(ha, hb, fam);
      CHECK(rep.ok);
    }
  }
}

TEST_CASE("daseinisation factors through the frame-morphism functor") {
  using order::CoverRel;
  using order::FinLattice;
  using order::FinPoset;

  // finite meet-semilattice of rational intervals over a small grid, with a
  // synthetic empty interval as the bottom
  const std::vector<int> grid = {-2, -1, 0, 1, 2};
  std::vector<std::pair<int, int>> ivs;  // (q,r), q < r
  for (int q : grid)
    for (int r : grid)
      if (q < r) ivs.emplace_back(q, r);
  std::vector<std::string> labels = {"empty"};
  for (auto [q, r] : ivs)
    labels.push_back("(" + std::to_string(q) + "," + std::to_string(r) + ")");
  std::vector<std::pair<int, int>> rel;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    rel.emplace_back(0, static_cast<int>(i + 1));
    for (std::size_t j = 0; j < ivs.size(); ++j)
      if (ivs[j].first <= ivs[i].first && ivs[i].second <= ivs[j].second && i != j)
        rel.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
  }
  const FinLattice interval_lattice =
      FinLattice::from_poset(FinPoset::from_pairs(std::move(labels), rel));
  const CoverRel src = order::downset_membership_cover(interval_lattice);

  // targets: a commuting and a genuinely approximated observable
  struct Case {
    HermObs obs;
    Context ctx;
  };
  const MatrixAlg m3{{3}};
  const MatrixAlg m2{{2}};
  CMat d3(3);
  d3(0, 0) = 0.8;
  d3(1, 1) = -0.3;
  d3(2, 2) = 1.4;
  CMat tilted = 0.9 * sigma_z();
  tilted(0, 1) = tilted(1, 0) = 0.4;  // does not commute with C_z
  std::vector<Case> cases = {
      {HermObs(m3, d3), partition_context(3, {{0}, {1}, {2}})},
      {HermObs(m2, tilted), bloch_context(0, 0, 1, "C_z")},
  };

  for (const Case& cs : cases) {
    const int k = cs.ctx.atom_count();
    const FinLattice target = order::BoolAlg{k}.as_lattice();
    const CoverRel dst = order::join_cover(target);

    // f* sends an interval to the singleton on its daseinised projection,
    // read as an element of the boolean lattice (index == atom mask)
    std::vector<Mask> f_star(interval_lattice.size());
    f_star[0] = bit(0);
    std::vector<Mask> dasein_value(interval_lattice.size(), 0);
    for (std::size_t i = 0; i < ivs.size(); ++i) {
      const Mask v = inner_support_mask(cs.obs, Rat(ivs[i].first), cs.ctx) &
                     outer_support_mask(cs.obs, Rat(ivs[i].second), cs.ctx);
      dasein_value[i + 1] = v;
      f_star[i + 1] = bit(static_cast<int>(v));
    }

    const auto fm = order::frame_morphism_from_continuous(f_star, src, dst);
    for (int x = 0; x < interval_lattice.size(); ++x) {
      const int img = fm.map[order::canonical_inclusion(src, fm.src, x)];
      // image of the generator is the principal downset of the daseinised
      // projection inside the boolean frame
      const Mask expect = target.poset.downset(static_cast<int>(dasein_value[x]));
      CHECK(fm.dst.carrier[img] == expect);
    }
  }
}
