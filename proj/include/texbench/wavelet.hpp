#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "texbench/error.hpp"
#include "texbench/raster.hpp"

namespace texbench {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Orthonormal analysis filter pair. `lowpass` holds the scaling coefficients
// in natural order; `highpass` is the quadrature mirror g[k] = (-1)^k h[L-1-k].
// The coefficient tables are standard published values; make_filter checks
// nothing here because the wavelet unit tests assert the four filter
// invariants (sum, norm, even-shift orthogonality, vanishing moments), which
// are what actually matters.
struct WaveletFilter {
    std::string name;
    Eigen::VectorXd lowpass;
    Eigen::VectorXd highpass;
    int vanishing_moments = 0;

    int length() const { return int(lowpass.size()); }

    static const WaveletFilter& haar();
    static const WaveletFilter& db4();
    static const WaveletFilter& sym8();
    static const WaveletFilter& by_name(std::string_view name);  // UnknownWavelet
};

namespace wavelet_detail {

inline WaveletFilter make_filter(std::string name, std::vector<double> h, int vm) {
    WaveletFilter f;
    f.name = std::move(name);
    f.lowpass = Eigen::Map<const Eigen::VectorXd>(h.data(), Eigen::Index(h.size()));
    const int n = int(h.size());
    f.highpass.resize(n);
    for (int k = 0; k < n; ++k)
        f.highpass[k] = (k % 2 == 0 ? 1.0 : -1.0) * f.lowpass[n - 1 - k];
    f.vanishing_moments = vm;
    return f;
}

}  // namespace wavelet_detail

inline const WaveletFilter& WaveletFilter::haar() {
    static const WaveletFilter f = wavelet_detail::make_filter(
        "haar", {std::sqrt(0.5), std::sqrt(0.5)}, 1);
    return f;
}

inline const WaveletFilter& WaveletFilter::db4() {
    // Daubechies, 4 vanishing moments, 8 taps.
    static const WaveletFilter f = wavelet_detail::make_filter(
        "db4",
        {0.23037781330889651, 0.71484657055291567, 0.63088076792985892,
         -0.027983769416859854, -0.18703481171909309, 0.030841381835560764,
         0.032883011666885197, -0.010597401785069032},
        4);
    return f;
}

inline const WaveletFilter& WaveletFilter::sym8() {
    // Least-asymmetric Daubechies, 8 vanishing moments, 16 taps.
    static const WaveletFilter f = wavelet_detail::make_filter(
        "sym8",
        {0.0018899503327676891, -0.00030292051472413309, -0.014952258337062199,
         0.0038087520138944896, 0.04913717967373029, -0.027219029917103486,
         -0.051945838107881802, 0.36444189483617895, 0.777185751699628,
         0.48135965125905339, -0.061273359067811076, -0.14329423835127267,
         0.0076074873249766086, 0.031695087811525989, -0.00054213233180001072,
         -0.0033824159510050028},
        8);
    return f;
}

inline const WaveletFilter& WaveletFilter::by_name(std::string_view name) {
    if (name == "haar") return haar();
    if (name == "db4") return db4();
    if (name == "sym8") return sym8();
    fail("UnknownWavelet", "no filter named '" + std::string(name) + "' (have haar, db4, sym8)");
}

// One analysis step of the periodized transform, stride 2:
//   approx[i] = sum_k h[k] x[(2i+k) mod n]
//   detail[i] = sum_k g[k] x[(2i+k) mod n]
// Circular wrap keeps the map exactly orthonormal for every even n, including
// n shorter than the filter.
template <typename Derived>
std::pair<VectorX<typename Derived::Scalar>, VectorX<typename Derived::Scalar>>
dwt1d(const Eigen::MatrixBase<Derived>& signal, const WaveletFilter& filter) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = signal.size();
    if (n < 2 || n % 2 != 0)
        fail("OddLength", "dwt1d needs an even length >= 2, got " + std::to_string(n));

    const int taps = filter.length();
    VectorX<Scalar> approx(n / 2), detail(n / 2);
    for (Eigen::Index i = 0; i < n / 2; ++i) {
        Scalar a{}, d{};
        for (int k = 0; k < taps; ++k) {
            Eigen::Index idx = 2 * i + k;
            if (idx >= n) idx %= n;
            const Scalar v = signal(idx);
            a += Scalar(filter.lowpass[k]) * v;
            d += Scalar(filter.highpass[k]) * v;
        }
        approx[i] = a;
        detail[i] = d;
    }
    return {std::move(approx), std::move(detail)};
}

// Adjoint of dwt1d; exact inverse because the periodized filter bank is
// orthonormal. idwt1d(dwt1d(x)) == x to machine precision.
template <typename DerivedA, typename DerivedD>
VectorX<typename DerivedA::Scalar>
idwt1d(const Eigen::MatrixBase<DerivedA>& approx,
       const Eigen::MatrixBase<DerivedD>& detail, const WaveletFilter& filter) {
    using Scalar = typename DerivedA::Scalar;
    const Eigen::Index m = approx.size();
    if (m != detail.size())
        fail("LengthMismatch", "approx has " + std::to_string(m) + " samples, detail has " +
                                   std::to_string(detail.size()));
    if (m < 1) fail("LengthMismatch", "empty subband pair");

    const Eigen::Index n = 2 * m;
    const int taps = filter.length();
    VectorX<Scalar> signal = VectorX<Scalar>::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Scalar a = approx(i);
        const Scalar d = detail(i);
        for (int k = 0; k < taps; ++k) {
            Eigen::Index idx = 2 * i + k;
            if (idx >= n) idx %= n;
            signal[idx] += Scalar(filter.lowpass[k]) * a + Scalar(filter.highpass[k]) * d;
        }
    }
    return signal;
}

// 2D subbands of one decomposition level.
template <typename Scalar>
struct Subbands {
    MatrixX<Scalar> ca, ch, cv, cd;
};

namespace wavelet_detail {

// Transform every column of m independently; returns the per-column approx
// and detail halves stacked as matrices. Same sums in the same order as
// dwt1d, but over raw column storage with the circular wrap hoisted out of
// the main loop: only outputs whose window passes the column end (none for
// two-tap filters) pay for index arithmetic, and nothing is allocated per
// column.
template <typename Scalar>
std::pair<MatrixX<Scalar>, MatrixX<Scalar>> dwt_cols(const MatrixX<Scalar>& m,
                                                     const WaveletFilter& filter) {
    const Eigen::Index n = m.rows(), cols = m.cols(), half = n / 2;
    const int taps = filter.length();
    VectorX<Scalar> h(taps), g(taps);
    for (int k = 0; k < taps; ++k) {
        h[k] = Scalar(filter.lowpass[k]);
        g[k] = Scalar(filter.highpass[k]);
    }
    // Outputs i with 2i + taps <= n read a fully in-bounds window.
    const Eigen::Index nowrap = n >= taps ? (n - taps) / 2 + 1 : 0;
    MatrixX<Scalar> lo(half, cols), hi(half, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        const Scalar* x = m.data() + c * n;
        Scalar* plo = lo.data() + c * half;
        Scalar* phi = hi.data() + c * half;
        for (Eigen::Index i = 0; i < nowrap; ++i) {
            const Scalar* w = x + 2 * i;
            Scalar a{}, d{};
            for (int k = 0; k < taps; ++k) {
                a += h[k] * w[k];
                d += g[k] * w[k];
            }
            plo[i] = a;
            phi[i] = d;
        }
        for (Eigen::Index i = nowrap; i < half; ++i) {
            Scalar a{}, d{};
            for (int k = 0; k < taps; ++k) {
                const Scalar v = x[(2 * i + k) % n];
                a += h[k] * v;
                d += g[k] * v;
            }
            plo[i] = a;
            phi[i] = d;
        }
    }
    return {std::move(lo), std::move(hi)};
}

// Transform every row of m independently: the row-pass counterpart of
// dwt_cols, equal to transposing, filtering columns, and transposing back,
// but without the strided copies. Output column i is the filter-weighted sum
// of whole input columns 2i .. 2i+taps-1 (mod cols), so every read and write
// streams down contiguous memory.
template <typename Derived>
std::pair<MatrixX<typename Derived::Scalar>, MatrixX<typename Derived::Scalar>>
dwt_rows(const Eigen::MatrixBase<Derived>& input, const WaveletFilter& filter) {
    using Scalar = typename Derived::Scalar;
    // Binds without copying when the caller already holds a plain matrix;
    // expressions are evaluated once here.
    const MatrixX<Scalar>& m = input.derived();
    const Eigen::Index nc = m.cols(), half = nc / 2;
    const int taps = filter.length();
    MatrixX<Scalar> lo(m.rows(), half), hi(m.rows(), half);
    for (Eigen::Index i = 0; i < half; ++i) {
        auto a = lo.col(i);
        auto d = hi.col(i);
        const auto first = m.col((2 * i) % nc);
        a = Scalar(filter.lowpass[0]) * first;
        d = Scalar(filter.highpass[0]) * first;
        for (int k = 1; k < taps; ++k) {
            const auto w = m.col((2 * i + k) % nc);
            a += Scalar(filter.lowpass[k]) * w;
            d += Scalar(filter.highpass[k]) * w;
        }
    }
    return {std::move(lo), std::move(hi)};
}

// Both separable passes of a two-tap filter fused over each 2x2 input block:
// the quarters are written directly, with no half-size intermediates. A
// two-tap window never wraps, and the arithmetic matches the row-then-column
// pass order term for term, so the results are identical to the general
// path, just with half the memory traffic and no transient buffers.
template <typename Scalar>
void dwt2d_2tap(const MatrixX<Scalar>& m, const WaveletFilter& filter, Subbands<Scalar>& out) {
    const Eigen::Index nr = m.rows(), hr = nr / 2, hc = m.cols() / 2;
    const Scalar h0 = Scalar(filter.lowpass[0]), h1 = Scalar(filter.lowpass[1]);
    const Scalar g0 = Scalar(filter.highpass[0]), g1 = Scalar(filter.highpass[1]);
    out.ca.resize(hr, hc);
    out.ch.resize(hr, hc);
    out.cv.resize(hr, hc);
    out.cd.resize(hr, hc);
    for (Eigen::Index j = 0; j < hc; ++j) {
        const Scalar* left = m.data() + (2 * j) * nr;
        const Scalar* right = left + nr;
        Scalar* pca = out.ca.data() + j * hr;
        Scalar* pch = out.ch.data() + j * hr;
        Scalar* pcv = out.cv.data() + j * hr;
        Scalar* pcd = out.cd.data() + j * hr;
        for (Eigen::Index i = 0; i < hr; ++i) {
            // Row pass on rows 2i and 2i+1 ...
            const Scalar a0 = h0 * left[2 * i] + h1 * right[2 * i];
            const Scalar a1 = h0 * left[2 * i + 1] + h1 * right[2 * i + 1];
            const Scalar d0 = g0 * left[2 * i] + g1 * right[2 * i];
            const Scalar d1 = g0 * left[2 * i + 1] + g1 * right[2 * i + 1];
            // ... then the column pass on each half.
            pca[i] = h0 * a0 + h1 * a1;
            pch[i] = g0 * a0 + g1 * a1;
            pcv[i] = h0 * d0 + h1 * d1;
            pcd[i] = g0 * d0 + g1 * d1;
        }
    }
}

}  // namespace wavelet_detail

// Separable 2D analysis step. Rows are transformed first, then columns of
// each half, giving quarter-size subbands:
//   ca: approx both ways            ch: row-approx, column-detail
//   cv: row-detail, column-approx   cd: detail both ways
// ch picks up horizontal edges (intensity steps down the column direction),
// cv vertical ones, matching the usual toolbox naming. For a 2x2 block
// [[a,b],[c,d]] with haar: ca=(a+b+c+d)/2, ch=(a+b-c-d)/2, cv=(a-b+c-d)/2,
// cd=(a-b-c+d)/2.
template <typename Derived>
void dwt2d_into(const Eigen::MatrixBase<Derived>& m, const WaveletFilter& filter,
                Subbands<typename Derived::Scalar>& out) {
    using Scalar = typename Derived::Scalar;
    if (m.rows() < 2 || m.rows() % 2 != 0 || m.cols() < 2 || m.cols() % 2 != 0)
        fail("OddDimension", "dwt2d needs even dimensions >= 2, got " +
                                 std::to_string(m.rows()) + "x" + std::to_string(m.cols()));

    if (filter.length() == 2) {
        // resize() keeps the existing storage when the shape already fits,
        // so batch callers that pass the same struct every image allocate
        // nothing after the first.
        wavelet_detail::dwt2d_2tap<Scalar>(m.derived(), filter, out);
        return;
    }

    auto [lo, hi] = wavelet_detail::dwt_rows(m, filter);
    auto [ca, ch] = wavelet_detail::dwt_cols(lo, filter);
    auto [cv, cd] = wavelet_detail::dwt_cols(hi, filter);
    out.ca = std::move(ca);
    out.ch = std::move(ch);
    out.cv = std::move(cv);
    out.cd = std::move(cd);
}

template <typename Derived>
Subbands<typename Derived::Scalar> dwt2d(const Eigen::MatrixBase<Derived>& m,
                                         const WaveletFilter& filter) {
    Subbands<typename Derived::Scalar> s;
    dwt2d_into(m, filter, s);
    return s;
}

// Multi-level pyramid: level 1 transforms the input, each further level
// transforms the previous approximation. levels[0] is the finest.
template <typename Scalar>
struct DecompositionT {
    struct Level {
        MatrixX<Scalar> ch, cv, cd;
    };

    std::string filter_name;
    std::vector<Level> levels;
    MatrixX<Scalar> final_ca;
};

using Decomposition = DecompositionT<double>;

template <typename Derived>
DecompositionT<typename Derived::Scalar> decompose(const Eigen::MatrixBase<Derived>& m,
                                                   const WaveletFilter& filter,
                                                   int levels = 3) {
    using Scalar = typename Derived::Scalar;
    if (levels < 1) fail("BadLevels", "need at least 1 decomposition level");
    const Eigen::Index div = Eigen::Index(1) << levels;
    if (m.rows() % div != 0 || m.cols() % div != 0)
        fail("NotDivisible", std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                 " input is not divisible by 2^" + std::to_string(levels));

    DecompositionT<Scalar> dec;
    dec.filter_name = filter.name;
    MatrixX<Scalar> approx = m;
    for (int l = 0; l < levels; ++l) {
        Subbands<Scalar> s = dwt2d(approx, filter);
        dec.levels.push_back({std::move(s.ch), std::move(s.cv), std::move(s.cd)});
        approx = std::move(s.ca);
    }
    dec.final_ca = std::move(approx);
    return dec;
}

// Pixels enter as reals 0..255, unscaled.
inline Decomposition decompose(const GrayImage& img, const WaveletFilter& filter,
                               int levels = 3) {
    return decompose(img.to_matrix(), filter, levels);
}

// Analytic Haar basis: row k samples the classic Haar function with index
// k = 2^p + q - 1 at z = m/N. Interval membership is decided in integer
// arithmetic, so each row is exact up to the single scale factor
// 2^(p/2)/sqrt(N). The matrix is orthonormal, and applying the recursive
// haar dwt1d (log2 N passes over the approximation) to a signal yields
// exactly [final approx, details coarsest -> finest], which equals
// haar_matrix(N) * signal row for row, same signs.
inline Eigen::MatrixXd haar_matrix(int n) {
    if (n < 2 || (n & (n - 1)) != 0)
        fail("NotPowerOfTwo", "haar_matrix needs N = 2^n with n >= 1, got " + std::to_string(n));

    Eigen::MatrixXd h(n, n);
    const double root_n = std::sqrt(double(n));
    h.row(0).setConstant(1.0 / root_n);
    for (int k = 1; k < n; ++k) {
        int p = 0;
        while ((1 << (p + 1)) <= k) ++p;      // 2^p <= k < 2^(p+1)
        const int q = k - (1 << p) + 1;       // 1 <= q <= 2^p
        const double amp = std::pow(2.0, 0.5 * p) / root_n;
        for (int m = 0; m < n; ++m) {
            // z = m/n against the breakpoints (q-1)/2^p, (q-1/2)/2^p, q/2^p,
            // all scaled by 2n*2^p to stay integral.
            const long long t = 2LL * m * (1LL << p);
            const long long lo = 2LL * (q - 1) * n;
            const long long mid = (2LL * q - 1) * n;
            const long long hi = 2LL * q * n;
            if (t >= lo && t < mid)
                h(k, m) = amp;
            else if (t >= mid && t < hi)
                h(k, m) = -amp;
            else
                h(k, m) = 0.0;
        }
    }
    return h;
}

}  // namespace texbench
