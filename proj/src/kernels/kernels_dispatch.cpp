// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "radnet/kernels/kernels.hpp"

namespace radnet::kern {

const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
#endif

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "?";
}

const KernelTable& table(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return scalar_table();
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      if (isa_supported(Isa::Avx2)) return avx2_table();
#endif
      throw std::runtime_error("kernel ISA not supported on this CPU: avx2");
  }
  throw std::runtime_error("unknown kernel ISA");
}

namespace {

Isa select_isa() {
  if (const char* env = std::getenv("RADNET_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2") {
      if (!isa_supported(Isa::Avx2))
        throw std::runtime_error(
            "RADNET_KERNELS=avx2 requested but CPU lacks AVX2/FMA");
      return Isa::Avx2;
    }
    if (!want.empty() && want != "auto")
      throw std::runtime_error("unknown RADNET_KERNELS value: " + want);
  }
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

const KernelTable& active() { return table(active_isa()); }

}  // namespace radnet::kern
