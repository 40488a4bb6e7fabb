// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "ldpa/automata.hpp"

namespace ldpa {

struct HoaError : std::runtime_error {
    explicit HoaError(const std::string& msg) : std::runtime_error(msg) {}
};

// HOA v1, transition-based acceptance.  LDBAs are written as Buchi automata
// with an `ldba-qd:` header listing the states of Q_d; DPAs as
// `parity min even d` with the acceptance-set index equal to the color.
// Symbol alphabets are marked with an `alphabet: symbols` header and encoded
// one-hot over the APs.  Epsilon jumps are not representable; eliminate them
// before writing.
std::string emit_hoa(const Ldba& a);
std::string emit_hoa(const Dpa& d);

using Automaton = std::variant<Ldba, Dpa>;

// Accepts exactly the Buchi and parity-min-even acceptance conditions
// produced by emit_hoa; anything else raises HoaError.
Automaton parse_hoa(const std::string& text);

std::string to_dot(const Ldba& a);
std::string to_dot(const Dpa& d);

} // namespace ldpa
