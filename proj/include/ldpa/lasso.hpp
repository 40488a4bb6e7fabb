// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ldpa {

// A letter is an index into an explicit alphabet.  For LTL-derived automata
// the index doubles as the bitmask of atomic propositions that hold.
using Letter = std::uint32_t;

// Ultimately periodic word u.v^omega.  The period must be nonempty.
struct LassoWord {
    std::vector<Letter> prefix;
    std::vector<Letter> period;

    std::size_t positions() const { return prefix.size() + period.size(); }

    // Letter at an arbitrary position of the infinite word.
    Letter at(std::size_t i) const {
        if (i < prefix.size())
            return prefix[i];
        return period[(i - prefix.size()) % period.size()];
    }

    // Successor position in the lasso graph: the last position loops back
    // to the start of the period.
    std::size_t next_position(std::size_t i) const {
        return i + 1 < positions() ? i + 1 : prefix.size();
    }

    bool operator==(const LassoWord&) const = default;
};

} // namespace ldpa
