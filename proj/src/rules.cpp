#include "vpy/rules.hpp"

namespace vpy {

namespace {

FrozenType t_of(TypeTag tag)
{
    return FrozenType::scalar(tag);
}

std::string clash(std::string_view op, const FrozenType& l, const FrozenType& r)
{
    return "unsupported operand types for " + std::string(op) + ": " + to_string(l) + " and " +
           to_string(r);
}

bool complex_mix(const FrozenType& l, const FrozenType& r)
{
    bool lc = l.is(TypeTag::Complex), rc = r.is(TypeTag::Complex);
    return (lc || rc) && (lc || l.is_numeric()) && (rc || r.is_numeric());
}

FrozenType numeric_result(const FrozenType& l, const FrozenType& r)
{
    return l.is_integral() && r.is_integral() ? t_of(TypeTag::Int) : t_of(TypeTag::Real);
}

}  // namespace

std::optional<FrozenType> binop_type(std::string_view op, const FrozenType& l, const FrozenType& r,
                                     std::string& why)
{
    bool both_num = l.is_numeric() && r.is_numeric();
    if (op == "+") {
        if (both_num)
            return numeric_result(l, r);
        if (complex_mix(l, r))
            return t_of(TypeTag::Complex);
        if (l.is(TypeTag::String) && r.is(TypeTag::String))
            return l;
        if (l.is(TypeTag::Vector) && l == r)
            return l;
    } else if (op == "-") {
        if (both_num)
            return numeric_result(l, r);
        if (complex_mix(l, r))
            return t_of(TypeTag::Complex);
    } else if (op == "*") {
        if (both_num)
            return numeric_result(l, r);
        if (complex_mix(l, r))
            return t_of(TypeTag::Complex);
        if ((l.is(TypeTag::String) || l.is(TypeTag::Vector)) && r.is_integral())
            return l;
        if (l.is_integral() && (r.is(TypeTag::String) || r.is(TypeTag::Vector)))
            return r;
    } else if (op == "/") {
        if (both_num)
            return t_of(TypeTag::Real);
        if (complex_mix(l, r))
            return t_of(TypeTag::Complex);
    } else if (op == "%" || op == "**") {
        if (both_num)
            return numeric_result(l, r);
    } else {
        why = "unknown operator " + std::string(op);
        return std::nullopt;
    }
    why = clash(op, l, r);
    return std::nullopt;
}

std::optional<FrozenType> unop_type(std::string_view op, const FrozenType& t, std::string& why)
{
    if (op == "not") {
        if (condition_ok(t))
            return t_of(TypeTag::Bool);
    } else if (op == "-" || op == "+") {
        if (t.is_integral())
            return t_of(TypeTag::Int);
        if (t.is(TypeTag::Real) || t.is(TypeTag::Complex))
            return t;
    }
    why = "bad operand type for unary " + std::string(op) + ": " + to_string(t);
    return std::nullopt;
}

std::optional<FrozenType> compare_type(std::string_view op, const FrozenType& l, const FrozenType& r,
                                       std::string& why)
{
    bool equality = op == "==" || op == "!=";
    if (l.is_numeric() && r.is_numeric())
        return t_of(TypeTag::Bool);
    if (l.is(TypeTag::String) && r.is(TypeTag::String))
        return t_of(TypeTag::Bool);
    if (equality && complex_mix(l, r))
        return t_of(TypeTag::Bool);
    why = "cannot compare " + to_string(l) + " " + std::string(op) + " " + to_string(r);
    return std::nullopt;
}

std::optional<FrozenType> boolop_type(std::string_view op, const FrozenType& l, const FrozenType& r,
                                      std::string& why)
{
    if (l.is(TypeTag::Bool) && r.is(TypeTag::Bool))
        return t_of(TypeTag::Bool);
    why = "operands of '" + std::string(op) + "' must be bool, got " + to_string(l) + " and " +
          to_string(r);
    return std::nullopt;
}

std::optional<FrozenType> builtin_type(std::string_view name, const std::vector<FrozenType>& args,
                                       std::string& why)
{
    if (args.size() != 1) {
        why = std::string(name) + "() takes exactly one argument";
        return std::nullopt;
    }
    const FrozenType& a = args[0];
    if (name == "len") {
        if (a.is(TypeTag::String) || a.is(TypeTag::Vector))
            return t_of(TypeTag::Int);
    } else if (name == "int" || name == "float") {
        if (a.is_numeric() || a.is(TypeTag::String))
            return t_of(name == "int" ? TypeTag::Int : TypeTag::Real);
    } else if (name == "str") {
        if (printable(a))
            return t_of(TypeTag::String);
    } else {
        why = "unknown builtin " + std::string(name);
        return std::nullopt;
    }
    why = std::string(name) + "() does not accept " + to_string(a);
    return std::nullopt;
}

std::optional<FrozenType> index_type(const FrozenType& base, const FrozenType& index, std::string& why)
{
    if (!base.is(TypeTag::Vector) && !base.is(TypeTag::String)) {
        why = "cannot index a value of type " + to_string(base);
        return std::nullopt;
    }
    if (!index.is_integral()) {
        why = "index must be int";
        return std::nullopt;
    }
    return base.is(TypeTag::Vector) ? base.elem() : base;
}

std::optional<FrozenType> attr_type(const FrozenType& base, std::string& why)
{
    if (base.is(TypeTag::Complex))
        return t_of(TypeTag::Real);
    why = ".real and .imag need a complex value, got " + to_string(base);
    return std::nullopt;
}

bool condition_ok(const FrozenType& t)
{
    return t.is_numeric();
}

bool printable(const FrozenType& t)
{
    if (t.is(TypeTag::Lambda))
        return false;
    if (t.is(TypeTag::Vector))
        return list_element_ok(t.elem());
    return true;
}

bool list_element_ok(const FrozenType& t)
{
    return t.is(TypeTag::Int) || t.is(TypeTag::Real) || t.is(TypeTag::Bool) || t.is(TypeTag::String) ||
           t.is(TypeTag::Complex);
}

bool attr_store_ok(const FrozenType& value)
{
    return value.is_numeric();
}

}  // namespace vpy
