#include "fracfisher/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace fracfisher::detail {

namespace {

std::mutex plan_mutex;

fftw_plan get_plan(std::size_t n, bool forward, fftw_complex* buf) {
    static std::map<std::pair<std::size_t, bool>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, forward);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // FFTW_UNALIGNED lets the cached plan execute on any caller buffer via
    // fftw_execute_dft; FFTW_ESTIMATE avoids touching the buffer contents.
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                      forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(key, plan);
    return plan;
}

}  // namespace

void dft_inplace(std::vector<std::complex<double>>& v, bool forward) {
    if (v.empty()) return;
    auto* buf = reinterpret_cast<fftw_complex*>(v.data());
    fftw_plan plan = get_plan(v.size(), forward, buf);
    fftw_execute_dft(plan, buf, buf);
}

}  // namespace fracfisher::detail
