#include <cstdlib>
#include <cstring>

#include "ridgelab/kernels.hpp"

namespace ridgelab::kern {

const Table& active() {
  static const Table* picked = [] {
    const char* env = std::getenv("RIDGELAB_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar();
    const Table* t = avx2();
    return t ? t : &scalar();
  }();
  return *picked;
}

}  // namespace ridgelab::kern
