#pragma once

#include <cstdint>

namespace vpy {

struct CompileOptions {
    int int_width = 32;   // 32 or 64
    int real_width = 64;  // 64 or 32

    int64_t int_max() const { return int_width == 64 ? INT64_MAX : INT32_MAX; }
    int64_t int_min() const { return int_width == 64 ? INT64_MIN : INT32_MIN; }
    bool real32() const { return real_width == 32; }
};

// Two's-complement wrap of v to the configured width.
inline int64_t wrap_int(int64_t v, int width)
{
    if (width == 64)
        return v;
    return static_cast<int32_t>(static_cast<uint32_t>(static_cast<uint64_t>(v)));
}

}  // namespace vpy
