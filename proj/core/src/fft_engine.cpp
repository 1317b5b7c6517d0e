#include "fft_engine.hpp"

#include <fftw3.h>

#include <cstddef>
#include <mutex>
#include <unordered_map>

#include "phasebound/errors.hpp"

namespace phasebound::detail {

namespace {

struct PlanKey {
  std::vector<int> dims;
  int sign;
  bool operator==(const PlanKey&) const = default;
};

struct PlanKeyHash {
  std::size_t operator()(const PlanKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.sign + 7);
    for (int d : k.dims) h = h * 1315423911u ^ static_cast<std::size_t>(d);
    return h;
  }
};

// FFTW planning is not thread-safe; executing a shared plan on distinct
// arrays is. Plans use FFTW_ESTIMATE so planning is deterministic and does
// not touch the buffers, and FFTW_UNALIGNED so any vector qualifies for
// the new-array execute interface.
class PlanCache {
 public:
  fftw_plan get(const std::vector<int>& dims, int sign) {
    const PlanKey key{dims, sign};
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    std::vector<std::complex<double>> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf,
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) {
      throw StructuralError("fft: planner failed for the requested shape");
    }
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mu_;
  std::unordered_map<PlanKey, fftw_plan, PlanKeyHash> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void dft_inplace(std::vector<std::complex<double>>& data, const std::vector<int>& dims,
                 int sign) {
  fftw_plan plan = cache().get(dims, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace phasebound::detail
