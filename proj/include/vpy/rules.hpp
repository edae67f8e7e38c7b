#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vpy/types.hpp"

namespace vpy {

// Typing rules shared by inference and by the independent frozen-type check.
// Each returns the result type, or nullopt with `why` describing the clash.

std::optional<FrozenType> binop_type(std::string_view op, const FrozenType& l, const FrozenType& r,
                                     std::string& why);
std::optional<FrozenType> unop_type(std::string_view op, const FrozenType& t, std::string& why);
std::optional<FrozenType> compare_type(std::string_view op, const FrozenType& l, const FrozenType& r,
                                       std::string& why);
std::optional<FrozenType> boolop_type(std::string_view op, const FrozenType& l, const FrozenType& r,
                                      std::string& why);
// len, int, float, str. id() is handled by the caller since it needs a name.
std::optional<FrozenType> builtin_type(std::string_view name, const std::vector<FrozenType>& args,
                                       std::string& why);
std::optional<FrozenType> index_type(const FrozenType& base, const FrozenType& index, std::string& why);
std::optional<FrozenType> attr_type(const FrozenType& base, std::string& why);

bool condition_ok(const FrozenType& t);
bool printable(const FrozenType& t);
// Element types a list literal may hold.
bool list_element_ok(const FrozenType& t);
bool attr_store_ok(const FrozenType& value);

}  // namespace vpy
