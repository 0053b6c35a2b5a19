#pragma once

/**
 * @file affine_expr.hpp
 * @brief Parser for voicing-map literals like "z+2,x-1,y-2": three affine
 *        expressions in x, y, z over Z_n.
 */

#include <cctype>
#include <string>
#include <vector>

#include "gex/chord.hpp"
#include "gex/errors.hpp"

namespace gex {

namespace detail {

// One expression, e.g. "2x-3-y", into coefficients for (x, y, z) plus constant.
inline void parse_affine_expr(const std::string& expr, std::vector<long long>& row,
                              long long& constant) {
    row.assign(3, 0);
    constant = 0;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
    };
    skip_ws();
    if (i == expr.size()) throw ParseError("empty affine expression");
    while (i < expr.size()) {
        long long sign = 1;
        skip_ws();
        if (expr[i] == '+' || expr[i] == '-') {
            sign = expr[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        }
        bool has_digits = false;
        long long value = 0;
        while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
            value = value * 10 + (expr[i] - '0');
            has_digits = true;
            ++i;
        }
        skip_ws();
        if (i < expr.size() && (expr[i] == 'x' || expr[i] == 'y' || expr[i] == 'z')) {
            long long coeff = has_digits ? value : 1;
            row[static_cast<std::size_t>(expr[i] - 'x')] += sign * coeff;
            ++i;
        } else if (has_digits) {
            constant += sign * value;
        } else {
            throw ParseError("affine expression: unexpected character in \"" + expr + "\"");
        }
        skip_ws();
    }
}

}  // namespace detail

/// "expr,expr,expr" -> a 3x3 affine map (coordinates x, y, z).
inline AffineTripleMap parse_affine_map(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(current);
    if (parts.size() != 3)
        throw ParseError("affine map literal must have exactly 3 components: \"" + text + "\"");
    AffineTripleMap map;
    for (const auto& part : parts) {
        std::vector<long long> row;
        long long constant = 0;
        detail::parse_affine_expr(part, row, constant);
        map.matrix.push_back(std::move(row));
        map.constant.push_back(constant);
    }
    return map;
}

}  // namespace gex
