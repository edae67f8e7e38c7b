#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vpy {

enum class TypeTag { Int, Real, Bool, String, Complex, Vector, Lambda, None };

struct FrozenType {
    TypeTag tag = TypeTag::None;
    // vector: exactly one element type. lambda: parameter types then result.
    std::vector<FrozenType> elems;
    // false for a lambda whose signature was never fixed by a call site
    bool signature_known = true;

    static FrozenType scalar(TypeTag t) { return FrozenType{t, {}, true}; }
    static FrozenType vector_of(FrozenType elem);
    static FrozenType lambda(std::vector<FrozenType> params, FrozenType result);
    static FrozenType unknown_lambda();

    const FrozenType& elem() const { return elems.front(); }
    const FrozenType& result() const { return elems.back(); }
    size_t arity() const { return elems.empty() ? 0 : elems.size() - 1; }

    bool is(TypeTag t) const { return tag == t; }
    bool is_numeric() const { return tag == TypeTag::Int || tag == TypeTag::Real || tag == TypeTag::Bool; }
    bool is_integral() const { return tag == TypeTag::Int || tag == TypeTag::Bool; }
    // Lives in the heap; the frame slot holds a handle.
    bool is_compound() const
    {
        return tag == TypeTag::String || tag == TypeTag::Complex || tag == TypeTag::Vector ||
               tag == TypeTag::Lambda;
    }

    bool operator==(const FrozenType&) const = default;
};

std::string to_string(const FrozenType& t);
std::string_view type_tag_name(TypeTag t);
std::optional<FrozenType> parse_type(std::string_view text);

// One character per frame slot in the runtime's slot maps.
char slot_map_char(const FrozenType& t);

struct SlotRef {
    int level = 0;
    int offset = 0;

    bool operator==(const SlotRef&) const = default;
};

std::string to_string(SlotRef s);
std::optional<SlotRef> parse_slot(std::string_view text);

}  // namespace vpy
