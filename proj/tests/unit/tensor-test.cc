// tests/unit/tensor-test.cc
//
// Copyright 2026  The slt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include "doctest.h"
#include "slt/base/error.h"
#include "slt/tensor/grad-check.h"
#include "slt/tensor/lstm.h"
#include "slt/tensor/ops.h"

using namespace slt;

namespace {

Tensor RandomTensor(const Shape &shape, std::mt19937_64 &rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Tensor t(shape);
  for (double &v : t.values()) v = u(rng);
  return t;
}

void RandomizeParams(ParameterSet &ps, std::mt19937_64 &rng, double scale = 0.5) {
  for (Parameter *p : ps.All()) p->value = RandomTensor(p->value.shape(), rng, scale);
}

}  // namespace

TEST_CASE("affine small cases") {
  Graph g;
  Var y = Affine(g.Input(Tensor::Vector({1, 2})), g.Input(Tensor::Matrix(2, 2, {1, 0, 0, 1})),
                 g.Input(Tensor::Vector({0, 0})));
  CHECK(y.value() == Tensor::Vector({1, 2}));

  Var z = Affine(g.Input(Tensor::Vector({1, 1})), g.Input(Tensor::Matrix(2, 1, {1, 1})),
                 g.Input(Tensor::Vector({-2})));
  CHECK(z.value()[0] == 0.0);
}

TEST_CASE("affine matches a naive triple loop") {
  std::mt19937_64 rng(7);
  Tensor x = RandomTensor({3, 4}, rng), w = RandomTensor({4, 2}, rng), b = RandomTensor({2}, rng);
  Graph g;
  const Tensor &y = Affine(g.Input(x), g.Input(w), g.Input(b)).value();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      double s = b[j];
      for (std::size_t k = 0; k < 4; ++k) s += x.at(i, k) * w.at(k, j);
      CHECK(std::fabs(y.at(i, j) - s) < 1e-12);
    }
  }
}

TEST_CASE("affine shape mismatch names both shapes") {
  Graph g;
  try {
    MatMul(g.Input(Tensor(Shape{3})), g.Input(Tensor(Shape{4, 2})));
    FAIL("expected DimensionError");
  } catch (const DimensionError &e) {
    std::string msg = e.what();
    CHECK(msg.find("(3)") != std::string::npos);
    CHECK(msg.find("(4,2)") != std::string::npos);
  }
}

TEST_CASE("softmax closed forms and shift invariance") {
  Graph g;
  Var a = Softmax(g.Input(Tensor::Vector({0, 0})), 0);
  CHECK(a.value()[0] == doctest::Approx(0.5).epsilon(1e-15));
  Var b = Softmax(g.Input(Tensor::Vector({0, std::log(3.0)})), 0);
  CHECK(std::fabs(b.value()[0] - 0.25) < 1e-12);
  CHECK(std::fabs(b.value()[1] - 0.75) < 1e-12);

  std::mt19937_64 rng(3);
  Tensor x = RandomTensor({4, 5}, rng, 3.0);
  Tensor shifted = x;
  for (double &v : shifted.values()) v += 17.0;
  for (std::size_t axis : {0u, 1u}) {
    const Tensor &p = Softmax(g.Input(x), axis).value();
    const Tensor &q = Softmax(g.Input(shifted), axis).value();
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(p[i] >= 0.0);
      CHECK(std::fabs(p[i] - q[i]) < 1e-12);
    }
    // sums along the axis
    for (std::size_t o = 0; o < (axis == 0 ? 5u : 4u); ++o) {
      double s = 0.0;
      for (std::size_t j = 0; j < (axis == 0 ? 4u : 5u); ++j)
        s += axis == 0 ? p.at(j, o) : p.at(o, j);
      CHECK(std::fabs(s - 1.0) < 1e-12);
    }
  }
  CHECK_THROWS_AS(Softmax(g.Input(x), 2), DimensionError);
}

TEST_CASE("conv2d shapes follow the stride-2 law") {
  ParameterSet ps;
  Parameter &w1 = ps.Add("w1", {16, 3, 3, 1});
  Parameter &b1 = ps.Add("b1", {16});
  Parameter &w2 = ps.Add("w2", {16, 3, 3, 16});
  Parameter &b2 = ps.Add("b2", {16});
  Graph g;
  Var c1 = Conv2d(g.Input(Tensor(Shape{100, 128, 1})), g.Param(w1), g.Param(b1), 2, 2);
  CHECK(c1.shape() == Shape{50, 64, 16});
  Var c2 = Conv2d(c1, g.Param(w2), g.Param(b2), 2, 2);
  CHECK(c2.shape() == Shape{25, 32, 16});
  CHECK(Reshape(c2, {25, 512}).shape() == Shape{25, 512});

  // all-zero input, zero bias, arbitrary filters
  std::mt19937_64 rng(1);
  w1.value = RandomTensor(w1.value.shape(), rng);
  Var z = Conv2d(g.Input(Tensor(Shape{9, 7, 1})), g.Param(w1), g.Param(b1), 2, 2);
  for (double v : z.value().values()) CHECK(v == 0.0);

  CHECK_THROWS_AS(Conv2d(g.Input(Tensor(Shape{9, 7, 2})), g.Param(w1), g.Param(b1), 2, 2),
                  DimensionError);
}

TEST_CASE("conv2d equals sliding-window enumeration") {
  std::mt19937_64 rng(11);
  const std::size_t T = 7, F = 5;
  Tensor input = RandomTensor({T, F, 1}, rng);
  Graph g;
  Var y = Conv2d(g.Input(input), g.Input(Tensor(Shape{1, 3, 3, 1}, 1.0)),
                 g.Input(Tensor(Shape{1})), 2, 2);
  REQUIRE(y.shape() == Shape{4, 3, 1});
  for (long ot = 0; ot < 4; ++ot) {
    for (long of = 0; of < 3; ++of) {
      // window centred on (2 ot, 2 of), zeros outside the input
      double s = 0.0;
      for (long t = 2 * ot - 1; t <= 2 * ot + 1; ++t)
        for (long f = 2 * of - 1; f <= 2 * of + 1; ++f)
          if (t >= 0 && t < (long)T && f >= 0 && f < (long)F) s += input[t * F + f];
      CHECK(std::fabs(y.value()[ot * 3 + of] - s) < 1e-12);
    }
  }
}

TEST_CASE("lstm step closed forms") {
  ParameterSet ps;
  RecurrentCellParams cell = AddRecurrentCell(&ps, "cell", 3, 2);
  Graph g;
  LstmCellVars vars = LstmCellVars::Bind(g, cell);
  LstmState s0 = ZeroLstmState(g, 2);
  LstmState s1 = LstmStep(vars, s0, g.Input(Tensor::Vector({0.3, -2.0, 5.0})));
  CHECK(s1.c.value() == Tensor(Shape{2}));
  CHECK(s1.h.value() == Tensor(Shape{2}));

  const Tensor v = Tensor::Vector({1.5, -0.7});
  LstmState prev{g.Input(v), g.Input(Tensor(Shape{2}))};
  LstmState s2 = LstmStep(vars, prev, g.Input(Tensor::Vector({1, 2, 3})));
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(std::fabs(s2.c.value()[j] - 0.5 * v[j]) < 1e-15);
    CHECK(std::fabs(s2.h.value()[j] - 0.5 * std::tanh(0.5 * v[j])) < 1e-15);
  }
  CHECK_THROWS_AS(LstmStep(vars, ZeroLstmState(g, 3), g.Input(Tensor(Shape{3}))),
                  DimensionError);
}

TEST_CASE("lstm step gradients match central differences") {
  std::mt19937_64 rng(5);
  ParameterSet ps;
  RecurrentCellParams cell = AddRecurrentCell(&ps, "cell", 3, 4);
  Parameter &c0 = ps.Add("c0", {4});
  Parameter &h0 = ps.Add("h0", {4});
  Parameter &x = ps.Add("x", {3});
  RandomizeParams(ps, rng);
  auto loss = [&](Graph &g) {
    LstmCellVars vars = LstmCellVars::Bind(g, cell);
    LstmState s{g.Param(c0), g.Param(h0)};
    s = LstmStep(vars, s, g.Param(x));
    s = LstmStep(vars, s, g.Param(x));
    return Add(Sum(Mul(s.c, s.c)), Sum(Mul(s.h, g.Input(Tensor::Vector({1, -2, 3, 0.5})))));
  };
  GradCheckResult r = GradCheck(loss, ps.All(), 1e-5);
  CHECK(r.checked == ps.NumScalars());
  CHECK(r.max_relative_error < 1e-4);
}

TEST_CASE("cross entropy closed forms") {
  Graph g;
  CHECK(std::fabs(CrossEntropy(g.Input(Tensor(Shape{4}, 0.3)), 2).value().item() -
                  std::log(4.0)) < 1e-12);
  CHECK(CrossEntropy(g.Input(Tensor::Vector({0, 1e6, 0})), 1).value().item() ==
        doctest::Approx(0.0));
  CHECK(std::fabs(CrossEntropy(g.Input(Tensor::Vector({0, std::log(3.0)})), 0).value().item() +
                  std::log(0.25)) < 1e-12);
  CHECK_THROWS_AS(CrossEntropy(g.Input(Tensor(Shape{4})), 4), DimensionError);
}

TEST_CASE("backward on simple graphs") {
  ParameterSet ps;
  Parameter &x = ps.Add("x", {});
  Parameter &unused = ps.Add("unused", {3});
  x.value[0] = 3.0;
  unused.value.Fill(1.0);
  Graph g;
  Var xv = g.Param(x);
  g.Param(unused);
  g.Backward(Mul(xv, xv));
  CHECK(x.grad[0] == 6.0);
  for (double v : unused.grad.values()) CHECK(v == 0.0);

  Graph h;
  CHECK_THROWS_AS(h.Backward(h.Input(Tensor(Shape{2}))), DimensionError);
}

TEST_CASE("grad check of x^2") {
  ParameterSet ps;
  Parameter &x = ps.Add("x", {});
  x.value[0] = 3.0;
  auto loss = [&](Graph &g) {
    Var v = g.Param(x);
    return Mul(v, v);
  };
  GradCheckResult r = GradCheck(loss, ps.All(), 1e-3);
  CHECK(r.max_relative_error < 1e-8);
}

TEST_CASE("composite network gradients and determinism") {
  std::mt19937_64 rng(9);
  ParameterSet ps;
  Parameter &w1 = ps.Add("w1", {5, 6});
  Parameter &b1 = ps.Add("b1", {6});
  Parameter &w2 = ps.Add("w2", {6, 4});
  Parameter &b2 = ps.Add("b2", {4});
  RandomizeParams(ps, rng);
  const Tensor input = RandomTensor({5}, rng);
  auto loss = [&](Graph &g) {
    Var hidden = Tanh(Affine(g.Input(input), g.Param(w1), g.Param(b1)));
    Var probs = Softmax(Affine(hidden, g.Param(w2), g.Param(b2)), 0);
    return CrossEntropy(probs, 1);
  };
  GradCheckResult r = GradCheck(loss, ps.All(), 1e-3);
  CHECK(r.max_relative_error < 1e-4);

  std::vector<Tensor> first;
  for (Parameter *p : ps.All()) first.push_back(p->grad);
  GradCheck(loss, ps.All(), 1e-3);
  std::size_t k = 0;
  for (Parameter *p : ps.All()) CHECK(p->grad == first[k++]);
}

TEST_CASE("non-finite values are rejected") {
  Graph g;
  Var big = g.Input(Tensor::Vector({800.0}));
  Var ok = Tanh(big);
  CHECK(ok.value()[0] == 1.0);
  Var huge = g.Input(Tensor::Vector({1e200}));
  CHECK_THROWS_AS(Mul(huge, huge), NumericError);
  CHECK_THROWS_AS(g.Input(Tensor::Vector({std::nan("")})), NumericError);
}
