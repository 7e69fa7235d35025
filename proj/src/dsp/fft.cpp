// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/dsp/fft.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "radnet/core/errors.hpp"

namespace radnet::dsp {

namespace {

bool is_pow2(int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

// Twiddle factors exp(-j 2 pi k / n) for k < n/2, cached per length.
const std::vector<double>& twiddles(int64_t n) {
  static std::map<int64_t, std::vector<double>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> tw(static_cast<size_t>(n));  // interleaved (re, im)
  for (int64_t k = 0; k < n / 2; ++k) {
    const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(n);
    tw[static_cast<size_t>(2 * k)] = std::cos(ang);
    tw[static_cast<size_t>(2 * k + 1)] = std::sin(ang);
  }
  return cache.emplace(n, std::move(tw)).first->second;
}

// Iterative radix-2 DIT on contiguous planar scratch buffers.
void fft_pow2(double* re, double* im, int64_t n) {
  // Bit-reversal permutation.
  for (int64_t i = 1, j = 0; i < n; ++i) {
    int64_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  const auto& tw = twiddles(n);
  for (int64_t len = 2; len <= n; len <<= 1) {
    const int64_t step = n / len;
    for (int64_t start = 0; start < n; start += len) {
      for (int64_t k = 0; k < len / 2; ++k) {
        const double wr = tw[static_cast<size_t>(2 * k * step)];
        const double wi = tw[static_cast<size_t>(2 * k * step + 1)];
        const int64_t a = start + k;
        const int64_t b = a + len / 2;
        const double tr = re[b] * wr - im[b] * wi;
        const double ti = re[b] * wi + im[b] * wr;
        re[b] = re[a] - tr;
        im[b] = im[a] - ti;
        re[a] += tr;
        im[a] += ti;
      }
    }
  }
}

// Exact-angle O(N^2) DFT of one line; k*m is reduced mod n in integer
// arithmetic so the twiddle argument stays accurate for long lines.
void dft_line(const double* re_in, const double* im_in, double* re_out,
              double* im_out, int64_t n) {
  for (int64_t k = 0; k < n; ++k) {
    double sr = 0.0, si = 0.0;
    for (int64_t m = 0; m < n; ++m) {
      const int64_t km = (k * m) % n;
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(km) /
                         static_cast<double>(n);
      const double c = std::cos(ang), s = std::sin(ang);
      sr += re_in[m] * c - im_in[m] * s;
      si += re_in[m] * s + im_in[m] * c;
    }
    re_out[k] = sr;
    im_out[k] = si;
  }
}

struct AxisGeom {
  int64_t n;       // extent of the transform axis
  int64_t stride;  // element stride along the axis
  int64_t lines;   // number of independent lines
};

AxisGeom axis_geom(const Shape& s, int axis) {
  AxisGeom g{};
  g.n = s[static_cast<size_t>(axis)];
  g.stride = 1;
  for (size_t d = static_cast<size_t>(axis) + 1; d < s.size(); ++d)
    g.stride *= s[d];
  int64_t total = 1;
  for (int64_t e : s) total *= e;
  g.lines = total / g.n;
  return g;
}

// Start offset of the i-th line along `axis`.
int64_t line_start(int64_t line, const AxisGeom& g) {
  const int64_t inner = g.stride;
  const int64_t outer_block = g.n * inner;
  const int64_t outer = line / inner;
  const int64_t in_off = line % inner;
  return outer * outer_block + in_off;
}

template <class LineFn>
Tensor transform_axis(const Tensor& x, int axis, LineFn&& fn) {
  RN_CHECK(x.is_complex(), "fft: complex input required");
  const Shape& s = x.shape();
  RN_SHAPE_CHECK(axis >= 0 && axis < static_cast<int>(s.size()),
                 "fft: bad axis for shape " + shape_str(s));
  const AxisGeom g = axis_geom(s, axis);
  RN_CHECK(g.n >= 1, "fft: empty axis");

  Tensor out = Tensor::zeros(s, Dtype::Complex128);
  std::vector<double> lr(static_cast<size_t>(g.n)),
      li(static_cast<size_t>(g.n)), orr(static_cast<size_t>(g.n)),
      oi(static_cast<size_t>(g.n));
  for (int64_t line = 0; line < g.lines; ++line) {
    const int64_t base = line_start(line, g);
    for (int64_t k = 0; k < g.n; ++k) {
      lr[static_cast<size_t>(k)] = x.re()[base + k * g.stride];
      li[static_cast<size_t>(k)] = x.im()[base + k * g.stride];
    }
    fn(lr.data(), li.data(), orr.data(), oi.data(), g.n);
    for (int64_t k = 0; k < g.n; ++k) {
      out.re()[base + k * g.stride] = orr[static_cast<size_t>(k)];
      out.im()[base + k * g.stride] = oi[static_cast<size_t>(k)];
    }
  }
  return out;
}

}  // namespace

Tensor fft_axis(const Tensor& x, int axis) {
  const int64_t n = x.dim(axis);
  if (!is_pow2(n)) {
    static std::once_flag warned;
    std::call_once(warned, [n] {
      std::fprintf(stderr,
                   "radnet: fft length %lld is not a power of two; using the "
                   "O(N^2) reference transform\n",
                   static_cast<long long>(n));
    });
    return dft_reference_axis(x, axis);
  }
  return transform_axis(x, axis,
                        [](const double* re_in, const double* im_in,
                           double* re_out, double* im_out, int64_t len) {
                          std::copy_n(re_in, len, re_out);
                          std::copy_n(im_in, len, im_out);
                          fft_pow2(re_out, im_out, len);
                        });
}

Tensor dft_reference_axis(const Tensor& x, int axis) {
  return transform_axis(x, axis, dft_line);
}

Tensor fftshift_axis(const Tensor& x, int axis) {
  const Shape& s = x.shape();
  RN_SHAPE_CHECK(axis >= 0 && axis < static_cast<int>(s.size()),
                 "fftshift: bad axis for shape " + shape_str(s));
  const AxisGeom g = axis_geom(s, axis);
  Tensor out = Tensor::zeros(s, x.dtype());
  const int64_t half = g.n / 2;
  const int64_t planes = x.is_complex() ? 2 : 1;
  const int64_t plane_sz = x.numel();
  for (int64_t line = 0; line < g.lines; ++line) {
    const int64_t base = line_start(line, g);
    for (int64_t k = 0; k < g.n; ++k) {
      const int64_t src = (k + g.n - half) % g.n;
      for (int64_t p = 0; p < planes; ++p)
        out.raw()[p * plane_sz + base + k * g.stride] =
            x.raw()[p * plane_sz + base + src * g.stride];
    }
  }
  return out;
}

Tensor apply_window_axis(const Tensor& x, int axis,
                         const std::vector<double>& w) {
  const Shape& s = x.shape();
  RN_SHAPE_CHECK(axis >= 0 && axis < static_cast<int>(s.size()) &&
                     static_cast<int64_t>(w.size()) == s[axis],
                 "apply_window_axis: window length vs " + shape_str(s));
  const AxisGeom g = axis_geom(s, axis);
  Tensor out = x.clone();
  const int64_t planes = x.is_complex() ? 2 : 1;
  const int64_t plane_sz = x.numel();
  for (int64_t line = 0; line < g.lines; ++line) {
    const int64_t base = line_start(line, g);
    for (int64_t k = 0; k < g.n; ++k)
      for (int64_t p = 0; p < planes; ++p)
        out.raw()[p * plane_sz + base + k * g.stride] *=
            w[static_cast<size_t>(k)];
  }
  return out;
}

double total_power(const Tensor& x) {
  double s = 0.0;
  for (double v : x.raw()) s += v * v;
  return s;
}

}  // namespace radnet::dsp
