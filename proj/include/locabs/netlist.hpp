#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace locabs {

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t { Const, PI, And, Flop };

/// Edge in an And-Inverter graph: gate reference plus complement bit.
class Wire {
public:
    constexpr Wire() : x_(kUndef) {}
    constexpr Wire(GateId gate, bool sign) : x_((gate << 1) | static_cast<std::uint32_t>(sign)) {}

    static constexpr Wire from_raw(std::uint32_t x) { Wire w; w.x_ = x; return w; }

    constexpr GateId gate() const { return x_ >> 1; }
    constexpr bool sign() const { return x_ & 1; }
    constexpr std::uint32_t raw() const { return x_; }
    constexpr bool is_undef() const { return x_ == kUndef; }

    constexpr Wire operator~() const { return from_raw(x_ ^ 1); }
    /// (w ^ b) == (b ? ~w : w)
    constexpr Wire operator^(bool b) const { return from_raw(x_ ^ static_cast<std::uint32_t>(b)); }

    constexpr bool operator==(const Wire&) const = default;
    constexpr auto operator<=>(const Wire&) const = default;

private:
    static constexpr std::uint32_t kUndef = 0xFFFFFFFFu;
    std::uint32_t x_;
};

inline constexpr Wire wire_Undef{};

class NetlistError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sequential And-Inverter graph with structural hashing and local constant folding.
///
/// Gate 0 is the constant-true gate. Gates are numbered densely in creation order,
/// and And gates only reference lower-numbered gates. Flops are created first and
/// connected later with set_flop_input(), which is how next-state cycles are formed.
class Netlist {
public:
    Netlist();

    Wire True() const { return Wire(0, false); }

    Wire add_PI();
    Wire add_Flop();
    Wire add_And(Wire a, Wire b);
    void set_flop_input(Wire flop, Wire input);

    void set_property(Wire p);
    bool has_property() const { return !property_.is_undef(); }
    Wire property() const;
    /// Negated property.
    Wire bad() const;

    std::size_t size() const { return kinds_.size(); }
    GateKind kind(GateId g) const { return kinds_[g]; }
    GateKind kind(Wire w) const { return kinds_[w.gate()]; }

    /// Left and right fanin of an And gate.
    Wire fanin0(GateId g) const { return fanin0_[g]; }
    Wire fanin1(GateId g) const { return fanin1_[g]; }
    /// Input of a flop; wire_Undef until connected.
    Wire flop_input(GateId g) const { return fanin0_[g]; }

    std::span<const GateId> pis() const { return pis_; }
    std::span<const GateId> flops() const { return flops_; }
    std::size_t num_ands() const { return num_ands_; }

    /// Position of a PI or flop within pis() / flops().
    std::uint32_t ordinal(GateId g) const { return ordinal_[g]; }

    bool valid(Wire w) const { return !w.is_undef() && w.gate() < size(); }
    /// All flops connected and a property set.
    bool finalized() const;

private:
    GateId new_gate(GateKind k, Wire f0, Wire f1);

    std::vector<GateKind> kinds_;
    std::vector<Wire> fanin0_;
    std::vector<Wire> fanin1_;
    std::vector<std::uint32_t> ordinal_;
    std::vector<GateId> pis_;
    std::vector<GateId> flops_;
    std::size_t num_ands_ = 0;
    std::unordered_map<std::uint64_t, GateId> strash_;
    Wire property_;
};

/// Map from gates to values, indexed by wire but ignoring its sign.
/// Unmapped entries read as the undef value given at construction.
template <typename T>
class WMap {
public:
    explicit WMap(T undef = T{}) : undef_(undef) {}

    const T& operator[](Wire w) const
    {
        GateId g = w.gate();
        return g < data_.size() ? data_[g] : undef_;
    }

    T& ref(Wire w)
    {
        GateId g = w.gate();
        if (g >= data_.size()) data_.resize(g + 1, undef_);
        return data_[g];
    }

    void set(Wire w, T value) { ref(w) = value; }
    bool has(Wire w) const { return !((*this)[w] == undef_); }
    const T& undef() const { return undef_; }
    void clear() { data_.clear(); }

private:
    std::vector<T> data_;
    T undef_;
};

/// Sign-insensitive set of gates.
class WSet {
public:
    bool has(Wire w) const { return w.gate() < member_.size() && member_[w.gate()]; }

    bool insert(Wire w)
    {
        GateId g = w.gate();
        if (g >= member_.size()) member_.resize(g + 1, 0);
        if (member_[g]) return false;
        member_[g] = 1;
        ++size_;
        return true;
    }

    bool erase(Wire w)
    {
        if (!has(w)) return false;
        member_[w.gate()] = 0;
        --size_;
        return true;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    /// Members in ascending gate order.
    std::vector<GateId> members() const
    {
        std::vector<GateId> out;
        for (GateId g = 0; g < member_.size(); ++g)
            if (member_[g]) out.push_back(g);
        return out;
    }

    bool operator==(const WSet& o) const { return members() == o.members(); }

private:
    std::vector<std::uint8_t> member_;
    std::size_t size_ = 0;
};

/// Two-valued evaluation of every gate, indexed by gate id; `leaf` supplies PI and flop values.
std::vector<bool> evaluate_combinational(const Netlist& n, const std::function<bool(GateId)>& leaf);

}  // namespace locabs

template <>
struct std::hash<locabs::Wire> {
    std::size_t operator()(const locabs::Wire& w) const noexcept { return std::hash<std::uint32_t>{}(w.raw()); }
};
