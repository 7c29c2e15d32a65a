#include <cstdlib>
#include <string>
#include <vector>

#include "geocl/kernels.hpp"
#include "variants.hpp"

namespace geocl::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(GEOCL_HAVE_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Kernels* lookup(const std::string& name) {
  if (name == "scalar") return &scalar();
#if defined(GEOCL_HAVE_AVX2)
  if (name == "avx2" && cpu_has_avx2()) return &avx2_variant();
#endif
  return nullptr;
}

const Kernels& select() {
  if (const char* env = std::getenv("GEOCL_KERNEL")) {
    if (const Kernels* k = lookup(env)) return *k;
    // Unknown or unsupported override: fall through to auto selection rather
    // than failing deep inside a computation; the CLI validates the name up
    // front where a crisp error is possible.
  }
#if defined(GEOCL_HAVE_AVX2)
  if (cpu_has_avx2()) return avx2_variant();
#endif
  return scalar();
}

}  // namespace

const Kernels& active() {
  static const Kernels& k = select();
  return k;
}

const Kernels* by_name(const std::string& name) { return lookup(name); }

std::vector<std::string> available() {
  std::vector<std::string> out{"scalar"};
  if (cpu_has_avx2()) out.emplace_back("avx2");
  return out;
}

}  // namespace geocl::kernels
