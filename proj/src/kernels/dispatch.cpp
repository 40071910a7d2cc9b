#include <cstdlib>
#include <cstring>

#include "plcap/kernels.hpp"

namespace plcap::kern {

namespace {

const Ops* resolve() {
    const char* env = std::getenv("PLCAP_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_ops();
    const Ops* v = avx2_ops();
    if (env && std::strcmp(env, "avx2") == 0 && v == nullptr) {
        // Requested vector kernels on a machine without them; fall back.
        return &scalar_ops();
    }
    return v ? v : &scalar_ops();
}

}  // namespace

const Ops& active() {
    static const Ops* ops = resolve();
    return *ops;
}

}  // namespace plcap::kern
