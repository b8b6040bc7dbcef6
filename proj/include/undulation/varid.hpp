#ifndef UNDULATION_VARID_HPP
#define UNDULATION_VARID_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "undulation/errors.hpp"

namespace undulation {

enum class VarKind : std::uint8_t {
    CoeffC = 0, // curve coefficient C[i,j,k]
    LineV  = 1, // v1, v2, v3
    LineU  = 2, // u1, u2, u3
    Param  = 3, // auxiliary parameters t0, t1, ...
};

/// A variable of the polynomial universe. The integer encoding fixes the
/// global variable precedence used by all monomial orders: C[i,j,k] blocks
/// first (i descending, then j descending -- for quartics this is exactly
/// the letter order a..o), then v1 > v2 > v3, then u1 > u2 > u3, then
/// parameters. Smaller id means higher precedence.
class VarId {
public:
    static VarId coeffC(int i, int j, int k) {
        if (i < 0 || j < 0 || k < 0 || i > 250 || j > 250 || k > 250)
            throw MathError("VarId: coefficient exponents out of range");
        return VarId((0u << 28) | (static_cast<std::uint32_t>(255 - i) << 16) |
                     (static_cast<std::uint32_t>(255 - j) << 8) |
                     static_cast<std::uint32_t>(255 - k));
    }
    static VarId lineV(int axis) { return axis_id(VarKind::LineV, axis); }
    static VarId lineU(int axis) { return axis_id(VarKind::LineU, axis); }
    static VarId param(int index) {
        if (index < 0 || index > 1000) throw MathError("VarId: parameter index out of range");
        return VarId((3u << 28) | static_cast<std::uint32_t>(index));
    }

    VarKind kind() const { return static_cast<VarKind>(code_ >> 28); }

    // CoeffC payload
    int ci() const { return 255 - static_cast<int>((code_ >> 16) & 0xFF); }
    int cj() const { return 255 - static_cast<int>((code_ >> 8) & 0xFF); }
    int ck() const { return 255 - static_cast<int>(code_ & 0xFF); }

    // LineV / LineU payload
    int axis() const { return static_cast<int>(code_ & 0xFF); }
    // Param payload
    int param_index() const { return static_cast<int>(code_ & 0x0FFFFFFF); }

    // Contribution of one power of this variable to the weight grading.
    std::array<int, 3> weight() const {
        switch (kind()) {
            case VarKind::CoeffC: return {ci(), cj(), ck()};
            case VarKind::LineV: {
                std::array<int, 3> w{0, 0, 0};
                w[static_cast<std::size_t>(axis())] = 1;
                return w;
            }
            default: return {0, 0, 0};
        }
    }

    bool operator==(const VarId& o) const { return code_ == o.code_; }
    bool operator!=(const VarId& o) const { return code_ != o.code_; }
    bool operator<(const VarId& o) const { return code_ < o.code_; }
    bool operator>(const VarId& o) const { return code_ > o.code_; }

    std::uint32_t code() const { return code_; }

    // Letters a..o name the 15 quartic coefficient slots in precedence order.
    std::string name(bool quartic_letters = false) const {
        switch (kind()) {
            case VarKind::CoeffC: {
                if (quartic_letters && ci() + cj() + ck() == 4) {
                    int idx = quartic_slot_index(ci(), cj(), ck());
                    return std::string(1, static_cast<char>('a' + idx));
                }
                return "C[" + std::to_string(ci()) + "," + std::to_string(cj()) + "," +
                       std::to_string(ck()) + "]";
            }
            case VarKind::LineV: return "v" + std::to_string(axis() + 1);
            case VarKind::LineU: return "u" + std::to_string(axis() + 1);
            case VarKind::Param: return "t" + std::to_string(param_index());
        }
        return "?";
    }

    // Index of C[i,j,k] with i+j+k=4 in precedence (letter) order, 0..14.
    static int quartic_slot_index(int i, int j, int k) {
        int idx = 0;
        for (int ii = 4; ii >= 0; --ii)
            for (int jj = 4 - ii; jj >= 0; --jj) {
                if (ii == i && jj == j && 4 - ii - jj == k) return idx;
                ++idx;
            }
        throw MathError("not a quartic coefficient slot");
    }

private:
    explicit VarId(std::uint32_t code) : code_(code) {}

    static VarId axis_id(VarKind kind, int axis) {
        if (axis < 0 || axis > 2) throw MathError("VarId: axis must be 0, 1 or 2");
        return VarId((static_cast<std::uint32_t>(kind) << 28) | static_cast<std::uint32_t>(axis));
    }

    std::uint32_t code_;
};

} // namespace undulation

#endif
