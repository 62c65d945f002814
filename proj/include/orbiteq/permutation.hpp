#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace orbiteq {

using Vertex = std::uint32_t;

// A permutation of {0..n-1} in image form: p[i] is the image of i.
using Permutation = std::vector<Vertex>;

Permutation identity_permutation(std::size_t n);
bool is_identity(const Permutation& p);
bool is_bijection(const Permutation& p);

// compose(a, b) applies a first, then b: x -> b[a[x]].
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);

// Parses cycle notation such as "(0 1 2)(3 4)". Commas may separate points.
// Points absent from every cycle are fixed. Throws std::invalid_argument.
Permutation parse_cycles(std::string_view text, std::size_t degree);

// Parses a semicolon-separated generator list, e.g. "(0 1 2);(0 1)".
std::vector<Permutation> parse_generators(std::string_view text, std::size_t degree);

std::string to_cycle_string(const Permutation& p);

}  // namespace orbiteq
