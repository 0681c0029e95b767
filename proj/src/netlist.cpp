#include "locabs/netlist.hpp"

namespace locabs {

namespace {

constexpr std::uint32_t kNoOrdinal = 0xFFFFFFFFu;

std::uint64_t strash_key(Wire a, Wire b)
{
    return (static_cast<std::uint64_t>(a.raw()) << 32) | b.raw();
}

}  // namespace

Netlist::Netlist()
{
    new_gate(GateKind::Const, wire_Undef, wire_Undef);
}

GateId Netlist::new_gate(GateKind k, Wire f0, Wire f1)
{
    auto g = static_cast<GateId>(kinds_.size());
    kinds_.push_back(k);
    fanin0_.push_back(f0);
    fanin1_.push_back(f1);
    ordinal_.push_back(kNoOrdinal);
    return g;
}

Wire Netlist::add_PI()
{
    GateId g = new_gate(GateKind::PI, wire_Undef, wire_Undef);
    ordinal_[g] = static_cast<std::uint32_t>(pis_.size());
    pis_.push_back(g);
    return Wire(g, false);
}

Wire Netlist::add_Flop()
{
    GateId g = new_gate(GateKind::Flop, wire_Undef, wire_Undef);
    ordinal_[g] = static_cast<std::uint32_t>(flops_.size());
    flops_.push_back(g);
    return Wire(g, false);
}

Wire Netlist::add_And(Wire a, Wire b)
{
    if (!valid(a) || !valid(b))
        throw NetlistError("add_And: invalid fanin wire");

    if (a > b) std::swap(a, b);

    // Constant gate has the smallest id, so a constant fanin always lands in 'a'.
    if (a == True()) return b;
    if (a == ~True()) return ~True();
    if (a == b) return a;
    if (a == ~b) return ~True();

    std::uint64_t key = strash_key(a, b);
    if (auto it = strash_.find(key); it != strash_.end())
        return Wire(it->second, false);

    GateId g = new_gate(GateKind::And, a, b);
    ++num_ands_;
    strash_.emplace(key, g);
    return Wire(g, false);
}

void Netlist::set_flop_input(Wire flop, Wire input)
{
    if (!valid(flop) || kind(flop) != GateKind::Flop)
        throw NetlistError("set_flop_input: not a flop");
    if (!valid(input))
        throw NetlistError("set_flop_input: invalid input wire");
    if (!fanin0_[flop.gate()].is_undef())
        throw NetlistError("set_flop_input: flop input already set");
    fanin0_[flop.gate()] = input;
}

void Netlist::set_property(Wire p)
{
    if (!valid(p))
        throw NetlistError("set_property: invalid wire");
    property_ = p;
}

Wire Netlist::property() const
{
    if (property_.is_undef())
        throw NetlistError("netlist has no property");
    return property_;
}

Wire Netlist::bad() const
{
    return ~property();
}

bool Netlist::finalized() const
{
    if (!has_property()) return false;
    for (GateId f : flops_)
        if (fanin0_[f].is_undef()) return false;
    return true;
}

std::vector<bool> evaluate_combinational(const Netlist& n, const std::function<bool(GateId)>& leaf)
{
    std::vector<bool> val(n.size(), false);
    for (GateId g = 0; g < n.size(); ++g) {
        switch (n.kind(g)) {
        case GateKind::Const: val[g] = true; break;
        case GateKind::PI:
        case GateKind::Flop: val[g] = leaf(g); break;
        case GateKind::And: {
            Wire a = n.fanin0(g), b = n.fanin1(g);
            val[g] = (val[a.gate()] != a.sign()) && (val[b.gate()] != b.sign());
            break;
        }
        }
    }
    return val;
}

}  // namespace locabs
