#include "stepwell/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace stepwell::kernels {

namespace {

KernelTable scalar_table() {
    return {&scalar::bessel_sums, &scalar::phase_sum, &scalar::rotate_sum};
}

#ifdef STEPWELL_HAVE_AVX2
KernelTable avx2_table() {
    return {&avx2::bessel_sums, &avx2::phase_sum, &avx2::rotate_sum};
}
#endif

struct Dispatch {
    KernelTable table;
    Isa isa;
    Dispatch() {
        isa = Isa::scalar;
        table = scalar_table();
#ifdef STEPWELL_HAVE_AVX2
        const char* env = std::getenv("STEPWELL_ISA");
        const bool want_scalar = env && std::strcmp(env, "scalar") == 0;
        if (!want_scalar && avx2::supported()) {
            isa = Isa::avx2;
            table = avx2_table();
        }
#endif
    }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

} // namespace

const KernelTable& active() { return dispatch().table; }

Isa active_isa() { return dispatch().isa; }

void force_isa(Isa isa) {
    Dispatch& d = dispatch();
    if (isa == Isa::scalar) {
        d.isa = Isa::scalar;
        d.table = scalar_table();
        return;
    }
#ifdef STEPWELL_HAVE_AVX2
    if (isa == Isa::avx2 && avx2::supported()) {
        d.isa = Isa::avx2;
        d.table = avx2_table();
        return;
    }
#endif
    throw std::runtime_error("force_isa: requested ISA not available on this host");
}

} // namespace stepwell::kernels
