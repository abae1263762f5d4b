#include "qmf/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "impl.hpp"
#include "qmf/errors.hpp"

namespace qmf::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(QMFORM_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Impl pick_initial() {
  if (const char* env = std::getenv("QMFORM_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Impl::scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Impl::avx2;
  }
  return cpu_has_avx2() ? Impl::avx2 : Impl::scalar;
}

std::atomic<Impl>& current() {
  static std::atomic<Impl> impl{pick_initial()};
  return impl;
}

}  // namespace

Impl active_impl() { return current().load(std::memory_order_relaxed); }

std::string impl_name(Impl impl) {
  switch (impl) {
    case Impl::scalar: return "scalar";
    case Impl::avx2: return "avx2";
  }
  return "unknown";
}

bool impl_available(Impl impl) {
  return impl == Impl::scalar || (impl == Impl::avx2 && cpu_has_avx2());
}

void force_impl(Impl impl) {
  if (!impl_available(impl))
    throw ValidationError("kernel implementation '" + impl_name(impl) +
                          "' is not available on this machine");
  current().store(impl, std::memory_order_relaxed);
}

std::int64_t count_pattern(std::span<const std::int32_t> text,
                           std::span<const std::int32_t> pattern) {
  if (pattern.empty()) throw ValidationError("empty pattern");
#if defined(QMFORM_BUILD_AVX2)
  if (active_impl() == Impl::avx2)
    return detail::count_pattern_avx2(text, pattern);
#endif
  return detail::count_pattern_scalar(text, pattern);
}

std::int64_t shoelace_pair(std::span<const std::int32_t> word, std::int32_t gi,
                           std::int32_t gj) {
  if (gi < 1 || gj < 1 || gi == gj)
    throw ValidationError("shoelace_pair needs two distinct generators");
#if defined(QMFORM_BUILD_AVX2)
  if (active_impl() == Impl::avx2)
    return detail::shoelace_pair_avx2(word, gi, gj);
#endif
  return detail::shoelace_pair_scalar(word, gi, gj);
}

}  // namespace qmf::kernels
