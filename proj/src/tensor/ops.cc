// src/tensor/ops.cc
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

#include "slt/tensor/ops.h"

#include <algorithm>
#include <cmath>

#include "slt/base/error.h"

namespace slt {

namespace {

Graph &Owner(Var a) {
  if (a.graph == nullptr) throw Error("operation on an unbound Var");
  return *a.graph;
}

Graph &Owner(Var a, Var b) {
  if (a.graph != b.graph) throw Error("operands belong to different graphs");
  return Owner(a);
}

[[noreturn]] void Mismatch(const char *op, const Shape &a, const Shape &b) {
  throw DimensionError(std::string(op) + ": incompatible shapes " + ShapeString(a) +
                       " and " + ShapeString(b));
}

std::size_t LastDim(const Tensor &t) { return t.rank() == 0 ? 1 : t.shape().back(); }

// c[m x k] += a[m x n] * b[n x k]
void GemmAcc(const double *a, const double *b, double *c, std::size_t m, std::size_t n,
             std::size_t k) {
  for (std::size_t i = 0; i < m; ++i) {
    double *ci = c + i * k;
    const double *ai = a + i * n;
    for (std::size_t p = 0; p < n; ++p) {
      const double av = ai[p];
      if (av == 0.0) continue;
      const double *bp = b + p * k;
      for (std::size_t j = 0; j < k; ++j) ci[j] += av * bp[j];
    }
  }
}

// c[m x n] += a[m x k] * b[n x k]^T
void GemmNTAcc(const double *a, const double *b, double *c, std::size_t m, std::size_t n,
               std::size_t k) {
  for (std::size_t i = 0; i < m; ++i) {
    const double *ai = a + i * k;
    double *ci = c + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double *bj = b + j * k;
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += ai[p] * bj[p];
      ci[j] += s;
    }
  }
}

// c[n x k] += a[m x n]^T * b[m x k]
void GemmTNAcc(const double *a, const double *b, double *c, std::size_t m, std::size_t n,
               std::size_t k) {
  for (std::size_t i = 0; i < m; ++i) {
    const double *ai = a + i * n;
    const double *bi = b + i * k;
    for (std::size_t p = 0; p < n; ++p) {
      const double av = ai[p];
      if (av == 0.0) continue;
      double *cp = c + p * k;
      for (std::size_t j = 0; j < k; ++j) cp[j] += av * bi[j];
    }
  }
}

template <typename F, typename D>
Var Elementwise(Var x, F forward, D derivative) {
  Graph &g = Owner(x);
  const Tensor &xv = x.value();
  Tensor y(xv.shape());
  for (std::size_t i = 0; i < xv.size(); ++i) y[i] = forward(xv[i]);
  const std::size_t xi = x.id;
  return g.Record(std::move(y), [xi, derivative](Graph &g, std::size_t self) {
    const Tensor &yv = g.value(self);
    const Tensor &dy = g.grad(self);
    Tensor &dx = g.grad(xi);
    for (std::size_t i = 0; i < yv.size(); ++i) dx[i] += dy[i] * derivative(yv[i]);
  });
}

}  // namespace

Var MatMul(Var a, Var b) {
  Graph &g = Owner(a, b);
  const Tensor &av = a.value();
  const Tensor &bv = b.value();
  const std::size_t ai = a.id, bi = b.id;

  if (bv.rank() == 2 && (av.rank() == 1 || av.rank() == 2)) {
    const std::size_t rows = av.rank() == 1 ? 1 : av.dim(0);
    const std::size_t n = LastDim(av);
    if (bv.dim(0) != n) Mismatch("MatMul", av.shape(), bv.shape());
    const std::size_t k = bv.dim(1);
    Tensor y(av.rank() == 1 ? Shape{k} : Shape{rows, k});
    GemmAcc(av.data(), bv.data(), y.data(), rows, n, k);
    return g.Record(std::move(y), [ai, bi, rows, n, k](Graph &g, std::size_t self) {
      const Tensor &dy = g.grad(self);
      GemmNTAcc(dy.data(), g.value(bi).data(), g.grad(ai).data(), rows, n, k);
      GemmTNAcc(g.value(ai).data(), dy.data(), g.grad(bi).data(), rows, n, k);
    });
  }
  if (av.rank() == 2 && bv.rank() == 1) {
    const std::size_t rows = av.dim(0), n = av.dim(1);
    if (bv.dim(0) != n) Mismatch("MatMul", av.shape(), bv.shape());
    Tensor y(Shape{rows});
    GemmNTAcc(av.data(), bv.data(), y.data(), rows, 1, n);
    return g.Record(std::move(y), [ai, bi, rows, n](Graph &g, std::size_t self) {
      const Tensor &dy = g.grad(self);
      // dA = dy b^T ; db = A^T dy
      GemmAcc(dy.data(), g.value(bi).data(), g.grad(ai).data(), rows, 1, n);
      GemmTNAcc(g.value(ai).data(), dy.data(), g.grad(bi).data(), rows, n, 1);
    });
  }
  Mismatch("MatMul", av.shape(), bv.shape());
}

Var Affine(Var x, Var w, Var b) { return AddBias(MatMul(x, w), b); }

Var AddBias(Var x, Var b) {
  Graph &g = Owner(x, b);
  const Tensor &xv = x.value();
  const Tensor &bv = b.value();
  const std::size_t n = LastDim(xv);
  if (bv.rank() != 1 || bv.dim(0) != n || xv.rank() == 0)
    Mismatch("AddBias", xv.shape(), bv.shape());
  Tensor y = xv;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += bv[i % n];
  const std::size_t xi = x.id, bi = b.id;
  return g.Record(std::move(y), [xi, bi, n](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    g.grad(xi).AddInPlace(dy);
    Tensor &db = g.grad(bi);
    for (std::size_t i = 0; i < dy.size(); ++i) db[i % n] += dy[i];
  });
}

Var Add(Var a, Var b) {
  Graph &g = Owner(a, b);
  if (a.shape() != b.shape()) Mismatch("Add", a.shape(), b.shape());
  Tensor y = a.value();
  y.AddInPlace(b.value());
  const std::size_t ai = a.id, bi = b.id;
  return g.Record(std::move(y), [ai, bi](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    g.grad(ai).AddInPlace(dy);
    g.grad(bi).AddInPlace(dy);
  });
}

Var Mul(Var a, Var b) {
  Graph &g = Owner(a, b);
  if (a.shape() != b.shape()) Mismatch("Mul", a.shape(), b.shape());
  const Tensor &av = a.value();
  const Tensor &bv = b.value();
  Tensor y(av.shape());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = av[i] * bv[i];
  const std::size_t ai = a.id, bi = b.id;
  return g.Record(std::move(y), [ai, bi](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    const Tensor &av = g.value(ai);
    const Tensor &bv = g.value(bi);
    {
      Tensor &da = g.grad(ai);
      for (std::size_t i = 0; i < dy.size(); ++i) da[i] += dy[i] * bv[i];
    }
    Tensor &db = g.grad(bi);
    for (std::size_t i = 0; i < dy.size(); ++i) db[i] += dy[i] * av[i];
  });
}

Var MulBroadcast(Var x, Var v) {
  Graph &g = Owner(x, v);
  const Tensor &xv = x.value();
  const Tensor &vv = v.value();
  const std::size_t n = LastDim(xv);
  if (vv.rank() != 1 || vv.dim(0) != n || xv.rank() == 0)
    Mismatch("MulBroadcast", xv.shape(), vv.shape());
  Tensor y(xv.shape());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = xv[i] * vv[i % n];
  const std::size_t xi = x.id, vi = v.id;
  return g.Record(std::move(y), [xi, vi, n](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    const Tensor &xv = g.value(xi);
    const Tensor &vv = g.value(vi);
    {
      Tensor &dx = g.grad(xi);
      for (std::size_t i = 0; i < dy.size(); ++i) dx[i] += dy[i] * vv[i % n];
    }
    Tensor &dv = g.grad(vi);
    for (std::size_t i = 0; i < dy.size(); ++i) dv[i % n] += dy[i] * xv[i];
  });
}

Var Scale(Var x, double c) {
  Graph &g = Owner(x);
  Tensor y = x.value();
  for (double &v : y.values()) v *= c;
  const std::size_t xi = x.id;
  return g.Record(std::move(y), [xi, c](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    Tensor &dx = g.grad(xi);
    for (std::size_t i = 0; i < dy.size(); ++i) dx[i] += c * dy[i];
  });
}

Var Tanh(Var x) {
  return Elementwise(
      x, [](double v) { return std::tanh(v); }, [](double y) { return 1.0 - y * y; });
}

Var Sigmoid(Var x) {
  return Elementwise(
      x, [](double v) { return 1.0 / (1.0 + std::exp(-v)); },
      [](double y) { return y * (1.0 - y); });
}

Var Softmax(Var x, std::size_t axis) {
  Graph &g = Owner(x);
  const Tensor &xv = x.value();
  if (axis >= xv.rank())
    throw DimensionError("Softmax: axis " + std::to_string(axis) + " invalid for shape " +
                         ShapeString(xv.shape()));
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= xv.dim(i);
  for (std::size_t i = axis + 1; i < xv.rank(); ++i) inner *= xv.dim(i);
  const std::size_t n = xv.dim(axis);
  Tensor y(xv.shape());
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) {
      const std::size_t base = o * n * inner + in;
      double mx = xv[base];
      for (std::size_t j = 1; j < n; ++j) mx = std::max(mx, xv[base + j * inner]);
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double e = std::exp(xv[base + j * inner] - mx);
        y[base + j * inner] = e;
        total += e;
      }
      for (std::size_t j = 0; j < n; ++j) y[base + j * inner] /= total;
    }
  }
  const std::size_t xi = x.id;
  return g.Record(std::move(y), [xi, outer, inner, n](Graph &g, std::size_t self) {
    const Tensor &yv = g.value(self);
    const Tensor &dy = g.grad(self);
    Tensor &dx = g.grad(xi);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t in = 0; in < inner; ++in) {
        const std::size_t base = o * n * inner + in;
        double dot = 0.0;
        for (std::size_t j = 0; j < n; ++j) dot += dy[base + j * inner] * yv[base + j * inner];
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t idx = base + j * inner;
          dx[idx] += yv[idx] * (dy[idx] - dot);
        }
      }
    }
  });
}

Var LogSoftmax(Var x) {
  Graph &g = Owner(x);
  const Tensor &xv = x.value();
  if (xv.rank() == 0) throw DimensionError("LogSoftmax on a scalar");
  const std::size_t n = LastDim(xv);
  const std::size_t rows = xv.size() / n;
  Tensor y(xv.shape());
  for (std::size_t r = 0; r < rows; ++r) {
    const double *row = xv.data() + r * n;
    const double mx = *std::max_element(row, row + n);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) total += std::exp(row[j] - mx);
    const double lse = mx + std::log(total);
    for (std::size_t j = 0; j < n; ++j) y[r * n + j] = row[j] - lse;
  }
  const std::size_t xi = x.id;
  return g.Record(std::move(y), [xi, n, rows](Graph &g, std::size_t self) {
    const Tensor &yv = g.value(self);
    const Tensor &dy = g.grad(self);
    Tensor &dx = g.grad(xi);
    for (std::size_t r = 0; r < rows; ++r) {
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) total += dy[r * n + j];
      for (std::size_t j = 0; j < n; ++j)
        dx[r * n + j] += dy[r * n + j] - std::exp(yv[r * n + j]) * total;
    }
  });
}

Var CrossEntropy(Var logits, std::size_t target) {
  Graph &g = Owner(logits);
  const Tensor &z = logits.value();
  if (z.rank() != 1) throw DimensionError("CrossEntropy expects a vector of logits, got " +
                                          ShapeString(z.shape()));
  if (target >= z.size())
    throw DimensionError("CrossEntropy: target " + std::to_string(target) +
                         " outside vocabulary of size " + std::to_string(z.size()));
  const double mx = *std::max_element(z.values().begin(), z.values().end());
  double total = 0.0;
  for (double v : z.values()) total += std::exp(v - mx);
  const double lse = mx + std::log(total);
  const double loss = lse - z[target];
  const std::size_t zi = logits.id;
  return g.Record(Tensor::Scalar(std::max(loss, 0.0)),
                  [zi, target, lse](Graph &g, std::size_t self) {
                    const double up = g.grad(self)[0];
                    const Tensor &z = g.value(zi);
                    Tensor &dz = g.grad(zi);
                    for (std::size_t j = 0; j < z.size(); ++j)
                      dz[j] += up * std::exp(z[j] - lse);
                    dz[target] -= up;
                  });
}

Var Sum(Var x) {
  Graph &g = Owner(x);
  double s = 0.0;
  for (double v : x.value().values()) s += v;
  const std::size_t xi = x.id;
  return g.Record(Tensor::Scalar(s), [xi](Graph &g, std::size_t self) {
    const double up = g.grad(self)[0];
    for (double &v : g.grad(xi).values()) v += up;
  });
}

Var Concat(const std::vector<Var> &parts) {
  if (parts.empty()) throw DimensionError("Concat of zero operands");
  Graph &g = Owner(parts[0]);
  const Tensor &first = parts[0].value();
  if (first.rank() == 0) throw DimensionError("Concat of scalars");
  const std::size_t rows = first.size() / LastDim(first);
  std::vector<std::size_t> widths, ids;
  std::size_t total = 0;
  for (Var p : parts) {
    Owner(parts[0], p);
    const Tensor &t = p.value();
    if (t.rank() != first.rank() || t.size() / LastDim(t) != rows ||
        !std::equal(t.shape().begin(), t.shape().end() - 1, first.shape().begin()))
      Mismatch("Concat", first.shape(), t.shape());
    widths.push_back(LastDim(t));
    ids.push_back(p.id);
    total += LastDim(t);
  }
  Shape shape = first.shape();
  shape.back() = total;
  Tensor y(shape);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Tensor &t = parts[k].value();
    for (std::size_t r = 0; r < rows; ++r)
      std::copy_n(t.data() + r * widths[k], widths[k], y.data() + r * total + offset);
    offset += widths[k];
  }
  return g.Record(std::move(y), [ids, widths, rows, total](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    std::size_t offset = 0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      Tensor &dx = g.grad(ids[k]);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t j = 0; j < widths[k]; ++j)
          dx[r * widths[k] + j] += dy[r * total + offset + j];
      offset += widths[k];
    }
  });
}

Var Row(Var x, std::size_t i) {
  Graph &g = Owner(x);
  const Tensor &xv = x.value();
  if (xv.rank() != 2 || i >= xv.dim(0))
    throw DimensionError("Row " + std::to_string(i) + " out of range for " +
                         ShapeString(xv.shape()));
  const std::size_t n = xv.dim(1);
  Tensor y(Shape{n});
  std::copy_n(xv.data() + i * n, n, y.data());
  const std::size_t xi = x.id;
  return g.Record(std::move(y), [xi, i, n](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    double *dx = g.grad(xi).data() + i * n;
    for (std::size_t j = 0; j < n; ++j) dx[j] += dy[j];
  });
}

Var StackRows(const std::vector<Var> &rows) {
  if (rows.empty()) throw DimensionError("StackRows of zero operands");
  Graph &g = Owner(rows[0]);
  const std::size_t n = rows[0].value().size();
  std::vector<std::size_t> ids;
  Tensor y(Shape{rows.size(), n});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Owner(rows[0], rows[r]);
    const Tensor &t = rows[r].value();
    if (t.rank() != 1 || t.size() != n) Mismatch("StackRows", rows[0].shape(), t.shape());
    std::copy_n(t.data(), n, y.data() + r * n);
    ids.push_back(rows[r].id);
  }
  return g.Record(std::move(y), [ids, n](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    for (std::size_t r = 0; r < ids.size(); ++r) {
      Tensor &dx = g.grad(ids[r]);
      for (std::size_t j = 0; j < n; ++j) dx[j] += dy[r * n + j];
    }
  });
}

Var Slice(Var x, std::size_t begin, std::size_t len) {
  Graph &g = Owner(x);
  const Tensor &xv = x.value();
  if (xv.rank() != 1 || len == 0 || begin + len > xv.size())
    throw DimensionError("Slice [" + std::to_string(begin) + ", " +
                         std::to_string(begin + len) + ") out of range for " +
                         ShapeString(xv.shape()));
  Tensor y(Shape{len});
  std::copy_n(xv.data() + begin, len, y.data());
  const std::size_t xi = x.id;
  return g.Record(std::move(y), [xi, begin, len](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    double *dx = g.grad(xi).data() + begin;
    for (std::size_t j = 0; j < len; ++j) dx[j] += dy[j];
  });
}

Var Gather(Var table, const std::vector<int> &ids) {
  Graph &g = Owner(table);
  const Tensor &tv = table.value();
  if (tv.rank() != 2) throw DimensionError("Gather expects a matrix, got " +
                                           ShapeString(tv.shape()));
  if (ids.empty()) throw DimensionError("Gather with no ids");
  const std::size_t n = tv.dim(1);
  Tensor y(Shape{ids.size(), n});
  for (std::size_t r = 0; r < ids.size(); ++r) {
    if (ids[r] < 0 || static_cast<std::size_t>(ids[r]) >= tv.dim(0))
      throw DimensionError("id " + std::to_string(ids[r]) + " outside table of " +
                           std::to_string(tv.dim(0)) + " rows");
    std::copy_n(tv.data() + ids[r] * n, n, y.data() + r * n);
  }
  const std::size_t ti = table.id;
  return g.Record(std::move(y), [ti, ids, n](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    Tensor &dt = g.grad(ti);
    for (std::size_t r = 0; r < ids.size(); ++r)
      for (std::size_t j = 0; j < n; ++j) dt[ids[r] * n + j] += dy[r * n + j];
  });
}

Var Reshape(Var x, Shape shape) {
  Graph &g = Owner(x);
  Tensor y = x.value().Reshaped(std::move(shape));
  const std::size_t xi = x.id;
  return g.Record(std::move(y), [xi](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    Tensor &dx = g.grad(xi);
    for (std::size_t i = 0; i < dy.size(); ++i) dx[i] += dy[i];
  });
}

Var Conv2d(Var input, Var filters, Var bias, std::size_t stride_t, std::size_t stride_f) {
  Graph &g = Owner(input, filters);
  Owner(input, bias);
  const Tensor &in = input.value();
  const Tensor &w = filters.value();
  const Tensor &b = bias.value();
  if (in.rank() != 3 || in.dim(0) < 1)
    throw DimensionError("Conv2d expects a non-empty (T, F, depth) input, got " +
                         ShapeString(in.shape()));
  if (w.rank() != 4 || w.dim(3) != in.dim(2) || w.dim(1) % 2 == 0 || w.dim(2) % 2 == 0)
    Mismatch("Conv2d", in.shape(), w.shape());
  if (b.rank() != 1 || b.dim(0) != w.dim(0)) Mismatch("Conv2d bias", w.shape(), b.shape());
  if (stride_t == 0 || stride_f == 0) throw DimensionError("Conv2d stride must be positive");

  const std::size_t T = in.dim(0), F = in.dim(1), D = in.dim(2);
  const std::size_t K = w.dim(0), KH = w.dim(1), KW = w.dim(2);
  const std::size_t OT = ConvOutputLength(T, stride_t), OF = ConvOutputLength(F, stride_f);
  const long pad_t = static_cast<long>(KH / 2), pad_f = static_cast<long>(KW / 2);

  // Visits every (output, kernel tap) pair that lands inside the input.
  auto for_each_tap = [=](auto &&fn) {
    for (std::size_t ot = 0; ot < OT; ++ot) {
      for (std::size_t dt = 0; dt < KH; ++dt) {
        const long t = static_cast<long>(ot * stride_t + dt) - pad_t;
        if (t < 0 || t >= static_cast<long>(T)) continue;
        for (std::size_t of = 0; of < OF; ++of) {
          for (std::size_t df = 0; df < KW; ++df) {
            const long f = static_cast<long>(of * stride_f + df) - pad_f;
            if (f < 0 || f >= static_cast<long>(F)) continue;
            const std::size_t in_off = (static_cast<std::size_t>(t) * F + f) * D;
            const std::size_t out_off = (ot * OF + of) * K;
            const std::size_t w_off = (dt * KW + df) * D;
            fn(in_off, out_off, w_off);
          }
        }
      }
    }
  };

  Tensor y(Shape{OT, OF, K});
  for (std::size_t i = 0; i < OT * OF; ++i)
    std::copy_n(b.data(), K, y.data() + i * K);
  const std::size_t wstride = KH * KW * D;
  for_each_tap([&](std::size_t in_off, std::size_t out_off, std::size_t w_off) {
    const double *x = in.data() + in_off;
    double *o = y.data() + out_off;
    for (std::size_t k = 0; k < K; ++k) {
      const double *wk = w.data() + k * wstride + w_off;
      double s = 0.0;
      for (std::size_t d = 0; d < D; ++d) s += wk[d] * x[d];
      o[k] += s;
    }
  });

  const std::size_t ii = input.id, wi = filters.id, bi = bias.id;
  return g.Record(std::move(y), [=](Graph &g, std::size_t self) {
    const Tensor &dy = g.grad(self);
    {
      Tensor &db = g.grad(bi);
      for (std::size_t i = 0; i < OT * OF; ++i)
        for (std::size_t k = 0; k < K; ++k) db[k] += dy[i * K + k];
    }
    const Tensor &in = g.value(ii);
    const Tensor &w = g.value(wi);
    Tensor &din = g.grad(ii);
    Tensor &dw = g.grad(wi);
    for_each_tap([&](std::size_t in_off, std::size_t out_off, std::size_t w_off) {
      const double *x = in.data() + in_off;
      double *dx = din.data() + in_off;
      const double *go = dy.data() + out_off;
      for (std::size_t k = 0; k < K; ++k) {
        const double gk = go[k];
        if (gk == 0.0) continue;
        const double *wk = w.data() + k * wstride + w_off;
        double *dwk = dw.data() + k * wstride + w_off;
        for (std::size_t d = 0; d < D; ++d) {
          dx[d] += gk * wk[d];
          dwk[d] += gk * x[d];
        }
      }
    });
  });
}

}  // namespace slt
