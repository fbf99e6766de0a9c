// AVX2+FMA variants of the hot quadrature kernels.  The vector exp/sincos
// use the standard Cody-Waite reductions with Cephes-grade polynomial
// kernels; absolute accuracy is a few ulp over the argument ranges the
// integrators produce (|t| <= 8, phases |x| <= ~1e6), which the
// scalar/SIMD equivalence tests pin down.

#include "stepwell/kernels.hpp"

#ifdef STEPWELL_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstring>

namespace stepwell::kernels::avx2 {

namespace {

inline __m256d poly_exp(__m256d r) {
    // Taylor kernel for e^r on [-ln2/2, ln2/2]; degree 13 keeps the
    // truncation below one ulp.
    const __m256d c13 = _mm256_set1_pd(1.6059043836821615e-10);
    const __m256d c12 = _mm256_set1_pd(2.0876756987868099e-9);
    const __m256d c11 = _mm256_set1_pd(2.5052108385441719e-8);
    const __m256d c10 = _mm256_set1_pd(2.7557319223985891e-7);
    const __m256d c9 = _mm256_set1_pd(2.7557319223985888e-6);
    const __m256d c8 = _mm256_set1_pd(2.4801587301587302e-5);
    const __m256d c7 = _mm256_set1_pd(1.9841269841269841e-4);
    const __m256d c6 = _mm256_set1_pd(1.3888888888888889e-3);
    const __m256d c5 = _mm256_set1_pd(8.3333333333333333e-3);
    const __m256d c4 = _mm256_set1_pd(4.1666666666666664e-2);
    const __m256d c3 = _mm256_set1_pd(1.6666666666666666e-1);
    const __m256d c2 = _mm256_set1_pd(5.0e-1);
    const __m256d c1 = _mm256_set1_pd(1.0);
    __m256d p = c13;
    p = _mm256_fmadd_pd(p, r, c12);
    p = _mm256_fmadd_pd(p, r, c11);
    p = _mm256_fmadd_pd(p, r, c10);
    p = _mm256_fmadd_pd(p, r, c9);
    p = _mm256_fmadd_pd(p, r, c8);
    p = _mm256_fmadd_pd(p, r, c7);
    p = _mm256_fmadd_pd(p, r, c6);
    p = _mm256_fmadd_pd(p, r, c5);
    p = _mm256_fmadd_pd(p, r, c4);
    p = _mm256_fmadd_pd(p, r, c3);
    p = _mm256_fmadd_pd(p, r, c2);
    p = _mm256_fmadd_pd(p, r, c1);
    p = _mm256_fmadd_pd(p, r, c1);
    return p;
}

inline __m256d vexp(__m256d x) {
    const __m256d lo_cut = _mm256_set1_pd(-708.0);
    const __m256d hi_cut = _mm256_set1_pd(708.0);
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

    __m256d under = _mm256_cmp_pd(x, lo_cut, _CMP_LT_OQ);
    __m256d over = _mm256_cmp_pd(x, hi_cut, _CMP_GT_OQ);
    __m256d xc = _mm256_min_pd(_mm256_max_pd(x, lo_cut), hi_cut);

    __m256d nd = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(nd, ln2_hi, xc);
    r = _mm256_fnmadd_pd(nd, ln2_lo, r);

    __m256d p = poly_exp(r);

    __m128i n32 = _mm256_cvtpd_epi32(nd);
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    __m256i expo = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    __m256d scale = _mm256_castsi256_pd(expo);
    p = _mm256_mul_pd(p, scale);

    p = _mm256_andnot_pd(under, p);
    p = _mm256_blendv_pd(p, _mm256_set1_pd(HUGE_VAL), over);
    return p;
}

inline void vsincos(__m256d x, __m256d* sn, __m256d* cs) {
    const __m256d two_over_pi = _mm256_set1_pd(6.36619772367581382433e-1);
    const __m256d pio2_1 = _mm256_set1_pd(1.57079632673412561417e0);
    const __m256d pio2_2 = _mm256_set1_pd(6.07710050650619224932e-11);
    const __m256d pio2_3 = _mm256_set1_pd(2.02226624879595063154e-21);

    __m256d qd = _mm256_round_pd(_mm256_mul_pd(x, two_over_pi),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(qd, pio2_1, x);
    r = _mm256_fnmadd_pd(qd, pio2_2, r);
    r = _mm256_fnmadd_pd(qd, pio2_3, r);

    const __m256d r2 = _mm256_mul_pd(r, r);

    __m256d ps = _mm256_set1_pd(1.58962301576546568060e-10);
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(-2.50507477628578072866e-8));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(2.75573136213857245213e-6));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(-1.98412698295895385996e-4));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(8.33333333332211858878e-3));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(-1.66666666666666307295e-1));
    __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(ps, r2), r, r);

    __m256d pc = _mm256_set1_pd(-1.13585365213876817300e-11);
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(2.08757008419747316778e-9));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(-2.75573141792967388112e-7));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(2.48015872888517179954e-5));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(-1.38888888888730564116e-3));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(4.16666666666665929218e-2));
    __m256d cos_r = _mm256_fmadd_pd(_mm256_mul_pd(pc, r2), r2,
                                    _mm256_fnmadd_pd(r2, _mm256_set1_pd(0.5),
                                                     _mm256_set1_pd(1.0)));

    __m128i q32 = _mm256_cvtpd_epi32(qd);
    __m256i q64 = _mm256_cvtepi32_epi64(q32);
    __m256i one = _mm256_set1_epi64x(1);
    __m256i two = _mm256_set1_epi64x(2);
    __m256d swap = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(q64, one), one));
    __m256d sin_neg = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(q64, two), two));
    __m256d cos_neg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(
        _mm256_and_si256(_mm256_add_epi64(q64, one), two), two));

    const __m256d signbit = _mm256_set1_pd(-0.0);
    __m256d s_out = _mm256_blendv_pd(sin_r, cos_r, swap);
    __m256d c_out = _mm256_blendv_pd(cos_r, sin_r, swap);
    s_out = _mm256_xor_pd(s_out, _mm256_and_pd(sin_neg, signbit));
    c_out = _mm256_xor_pd(c_out, _mm256_and_pd(cos_neg, signbit));
    *sn = s_out;
    *cs = c_out;
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

} // namespace

bool supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

BesselSums bessel_sums(double x, double s, const double* t, const double* w,
                       std::size_t n) {
    const __m256d vx = _mm256_set1_pd(-x);
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d half = _mm256_set1_pd(0.5);
    __m256d af = _mm256_setzero_pd(), afx = _mm256_setzero_pd();
    __m256d afs = _mm256_setzero_pd(), afxs = _mm256_setzero_pd();

    std::size_t i = 0;
    auto step = [&](__m256d vt, __m256d vw) {
        __m256d e = vexp(vt);
        __m256d c = _mm256_mul_pd(half, _mm256_add_pd(e, _mm256_div_pd(_mm256_set1_pd(1.0), e)));
        __m256d env = _mm256_mul_pd(vw, vexp(_mm256_mul_pd(vx, c)));
        __m256d sn, cs;
        vsincos(_mm256_mul_pd(vs, vt), &sn, &cs);
        af = _mm256_fmadd_pd(env, cs, af);
        afx = _mm256_fmadd_pd(_mm256_mul_pd(env, c), cs, afx);
        __m256d ts = _mm256_mul_pd(vt, sn);
        afs = _mm256_fmadd_pd(env, ts, afs);
        afxs = _mm256_fmadd_pd(_mm256_mul_pd(env, c), ts, afxs);
    };
    for (; i + 4 <= n; i += 4)
        step(_mm256_loadu_pd(t + i), _mm256_loadu_pd(w + i));
    if (i < n) {
        double tb[4] = {0, 0, 0, 0}, wb[4] = {0, 0, 0, 0};
        std::memcpy(tb, t + i, (n - i) * sizeof(double));
        std::memcpy(wb, w + i, (n - i) * sizeof(double));
        step(_mm256_loadu_pd(tb), _mm256_loadu_pd(wb));
    }
    BesselSums out;
    out.f = hsum(af);
    out.fx = hsum(afx);
    out.fs = hsum(afs);
    out.fxs = hsum(afxs);
    return out;
}

std::complex<double> phase_sum(const double* amp, const double* base, const double* k,
                               double x, std::size_t n) {
    const __m256d vxp = _mm256_set1_pd(x);
    __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
    std::size_t i = 0;
    auto step = [&](__m256d va, __m256d vb, __m256d vk) {
        __m256d ph = _mm256_fmadd_pd(vxp, vk, vb);
        __m256d sn, cs;
        vsincos(ph, &sn, &cs);
        ar = _mm256_fmadd_pd(va, cs, ar);
        ai = _mm256_fmadd_pd(va, sn, ai);
    };
    for (; i + 4 <= n; i += 4)
        step(_mm256_loadu_pd(amp + i), _mm256_loadu_pd(base + i), _mm256_loadu_pd(k + i));
    if (i < n) {
        double ab[4] = {0, 0, 0, 0}, bb[4] = {0, 0, 0, 0}, kb[4] = {0, 0, 0, 0};
        std::memcpy(ab, amp + i, (n - i) * sizeof(double));
        std::memcpy(bb, base + i, (n - i) * sizeof(double));
        std::memcpy(kb, k + i, (n - i) * sizeof(double));
        step(_mm256_loadu_pd(ab), _mm256_loadu_pd(bb), _mm256_loadu_pd(kb));
    }
    return {hsum(ar), hsum(ai)};
}

std::complex<double> rotate_sum(const double* re, const double* im, const double* phase,
                                std::size_t n) {
    __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
    std::size_t i = 0;
    auto step = [&](__m256d vr, __m256d vi, __m256d vp) {
        __m256d sn, cs;
        vsincos(vp, &sn, &cs);
        ar = _mm256_fmadd_pd(vr, cs, _mm256_fnmadd_pd(vi, sn, ar));
        ai = _mm256_fmadd_pd(vr, sn, _mm256_fmadd_pd(vi, cs, ai));
    };
    for (; i + 4 <= n; i += 4)
        step(_mm256_loadu_pd(re + i), _mm256_loadu_pd(im + i), _mm256_loadu_pd(phase + i));
    if (i < n) {
        double rb[4] = {0, 0, 0, 0}, ib[4] = {0, 0, 0, 0}, pb[4] = {0, 0, 0, 0};
        std::memcpy(rb, re + i, (n - i) * sizeof(double));
        std::memcpy(ib, im + i, (n - i) * sizeof(double));
        std::memcpy(pb, phase + i, (n - i) * sizeof(double));
        step(_mm256_loadu_pd(rb), _mm256_loadu_pd(ib), _mm256_loadu_pd(pb));
    }
    return {hsum(ar), hsum(ai)};
}

} // namespace stepwell::kernels::avx2

#endif // STEPWELL_HAVE_AVX2
