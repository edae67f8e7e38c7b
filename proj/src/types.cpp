#include "vpy/types.hpp"

#include <charconv>

namespace vpy {

FrozenType FrozenType::vector_of(FrozenType elem)
{
    FrozenType t{TypeTag::Vector, {}, true};
    t.elems.push_back(std::move(elem));
    return t;
}

FrozenType FrozenType::lambda(std::vector<FrozenType> params, FrozenType result)
{
    FrozenType t{TypeTag::Lambda, std::move(params), true};
    t.elems.push_back(std::move(result));
    return t;
}

FrozenType FrozenType::unknown_lambda()
{
    return FrozenType{TypeTag::Lambda, {}, false};
}

std::string_view type_tag_name(TypeTag t)
{
    switch (t) {
    case TypeTag::Int: return "int";
    case TypeTag::Real: return "real";
    case TypeTag::Bool: return "bool";
    case TypeTag::String: return "string";
    case TypeTag::Complex: return "complex";
    case TypeTag::Vector: return "vector";
    case TypeTag::Lambda: return "lambda";
    case TypeTag::None: return "none";
    }
    return "?";
}

std::string to_string(const FrozenType& t)
{
    std::string out(type_tag_name(t.tag));
    if (t.tag == TypeTag::Vector) {
        out += "[" + to_string(t.elem()) + "]";
    } else if (t.tag == TypeTag::Lambda) {
        if (!t.signature_known)
            return out + "[?]";
        out += "[";
        for (size_t i = 0; i < t.arity(); ++i) {
            if (i)
                out += ",";
            out += to_string(t.elems[i]);
        }
        out += "->" + to_string(t.result()) + "]";
    }
    return out;
}

namespace {

struct TypeReader {
    std::string_view s;
    size_t pos = 0;

    bool eat(std::string_view lit)
    {
        if (s.substr(pos, lit.size()) == lit) {
            pos += lit.size();
            return true;
        }
        return false;
    }

    std::optional<FrozenType> read()
    {
        static constexpr std::pair<std::string_view, TypeTag> scalars[] = {
            {"int", TypeTag::Int},       {"real", TypeTag::Real}, {"bool", TypeTag::Bool},
            {"string", TypeTag::String}, {"complex", TypeTag::Complex}, {"none", TypeTag::None},
        };
        if (eat("vector[")) {
            auto e = read();
            if (!e || !eat("]"))
                return std::nullopt;
            return FrozenType::vector_of(*e);
        }
        if (eat("lambda[")) {
            if (eat("?]"))
                return FrozenType::unknown_lambda();
            std::vector<FrozenType> params;
            if (!eat("->")) {
                while (true) {
                    auto p = read();
                    if (!p)
                        return std::nullopt;
                    params.push_back(*p);
                    if (eat("->"))
                        break;
                    if (!eat(","))
                        return std::nullopt;
                }
            }
            auto r = read();
            if (!r || !eat("]"))
                return std::nullopt;
            return FrozenType::lambda(std::move(params), *r);
        }
        for (auto [name, tag] : scalars) {
            if (eat(name))
                return FrozenType::scalar(tag);
        }
        return std::nullopt;
    }
};

}  // namespace

std::optional<FrozenType> parse_type(std::string_view text)
{
    TypeReader r{text};
    auto t = r.read();
    if (!t || r.pos != text.size())
        return std::nullopt;
    return t;
}

char slot_map_char(const FrozenType& t)
{
    switch (t.tag) {
    case TypeTag::Int: return 'i';
    case TypeTag::Bool: return 'b';
    case TypeTag::Real: return 'r';
    case TypeTag::String: return 's';
    case TypeTag::Complex: return 'c';
    case TypeTag::Vector: return 'v';
    case TypeTag::Lambda: return 'l';
    case TypeTag::None: return 'i';
    }
    return 'i';
}

std::string to_string(SlotRef s)
{
    return "L" + std::to_string(s.level) + "." + std::to_string(s.offset);
}

std::optional<SlotRef> parse_slot(std::string_view text)
{
    if (text.size() < 4 || text[0] != 'L')
        return std::nullopt;
    auto dot = text.find('.');
    if (dot == std::string_view::npos)
        return std::nullopt;
    SlotRef s;
    auto a = std::from_chars(text.data() + 1, text.data() + dot, s.level);
    auto b = std::from_chars(text.data() + dot + 1, text.data() + text.size(), s.offset);
    if (a.ec != std::errc{} || a.ptr != text.data() + dot || b.ec != std::errc{} ||
        b.ptr != text.data() + text.size() || s.level < 0 || s.offset < 0)
        return std::nullopt;
    return s;
}

}  // namespace vpy
