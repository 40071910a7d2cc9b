#include "plcap/parallel.hpp"

#include <cstdlib>

namespace plcap {

int default_threads() {
    if (const char* env = std::getenv("PLCAP_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? (int)hw : 1;
}

}  // namespace plcap
