#include "locabs/aiger.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace locabs::aiger {

namespace {

class Reader {
public:
    explicit Reader(std::string_view s) : s_(s) {}

    bool eof() const { return pos_ >= s_.size(); }
    std::size_t pos() const { return pos_; }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw AigerError("aiger: " + msg + " (offset " + std::to_string(pos_) + ")");
    }

    std::string_view line()
    {
        std::size_t end = s_.find('\n', pos_);
        if (end == std::string_view::npos) end = s_.size();
        std::string_view l = s_.substr(pos_, end - pos_);
        pos_ = std::min(end + 1, s_.size());
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
        return l;
    }

    unsigned char byte()
    {
        if (eof()) fail("unexpected end of binary and-gate section");
        return static_cast<unsigned char>(s_[pos_++]);
    }

    std::uint32_t varint()
    {
        std::uint32_t x = 0;
        int shift = 0;
        for (;;) {
            unsigned char c = byte();
            if (shift > 28) fail("delta encoding overflow");
            x |= static_cast<std::uint32_t>(c & 0x7f) << shift;
            if (!(c & 0x80)) return x;
            shift += 7;
        }
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

std::vector<std::uint32_t> numbers(std::string_view line, const Reader& r)
{
    std::vector<std::uint32_t> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
            ++i;
            continue;
        }
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
        if (ec != std::errc{}) r.fail("expected unsigned integer in '" + std::string(line) + "'");
        i = static_cast<std::size_t>(ptr - line.data());
        out.push_back(v);
    }
    return out;
}

Header parse_header(std::string_view line, const Reader& r)
{
    Header h;
    if (line.starts_with("aag "))
        h.binary = false;
    else if (line.starts_with("aig "))
        h.binary = true;
    else
        r.fail("missing 'aag' or 'aig' header");
    auto v = numbers(line.substr(4), r);
    if (v.size() < 5 || v.size() > 9) r.fail("header needs M I L O A [B C J F]");
    h.M = v[0], h.I = v[1], h.L = v[2], h.O = v[3], h.A = v[4];
    if (v.size() > 5) h.B = v[5];
    if (v.size() > 6) h.C = v[6];
    if (v.size() > 7) h.J = v[7];
    if (v.size() > 8) h.F = v[8];
    if (static_cast<std::uint64_t>(h.I) + h.L + h.A > h.M) r.fail("M smaller than I + L + A");
    if (h.binary && static_cast<std::uint64_t>(h.I) + h.L + h.A != h.M) r.fail("binary header needs M = I + L + A");
    if (h.C > 0) r.fail("invariant constraints are not supported");
    if (h.J > 0 || h.F > 0) r.fail("justice and fairness properties are not supported");
    return h;
}

}  // namespace

Design parse(std::string_view bytes, const ReadOptions& opts)
{
    Reader r(bytes);
    Design d;
    Header& h = d.header;
    h = parse_header(r.line(), r);
    Netlist& N = d.netlist;

    const std::uint64_t max_lit = 2ull * h.M + 1;
    auto check_lit = [&](std::uint32_t lit) {
        if (lit > max_lit) r.fail("literal " + std::to_string(lit) + " exceeds 2M+1");
        return lit;
    };
    auto one = [&](std::size_t count, const char* what) {
        auto v = numbers(r.line(), r);
        if (v.size() != count) r.fail(std::string("malformed ") + what + " line");
        for (auto x : v) check_lit(x);
        return v;
    };

    // var -> wire; var 0 is constant false.
    std::vector<Wire> var2wire(h.M + 1, wire_Undef);
    var2wire[0] = ~N.True();
    auto define = [&](std::uint32_t lit, Wire w, const char* what) {
        if (lit & 1) r.fail(std::string(what) + " literal must be even");
        if (lit == 0) r.fail(std::string(what) + " literal must not be constant");
        if (!var2wire[lit >> 1].is_undef()) r.fail("literal " + std::to_string(lit) + " defined twice");
        var2wire[lit >> 1] = w;
    };

    for (std::uint32_t i = 0; i < h.I; ++i) {
        Wire pi = N.add_PI();
        if (h.binary)
            define(2 * (i + 1), pi, "input");
        else
            define(one(1, "input")[0], pi, "input");
    }

    std::vector<Wire> latch_flops;
    std::vector<std::uint32_t> latch_next;
    for (std::uint32_t i = 0; i < h.L; ++i) {
        auto v = numbers(r.line(), r);
        std::uint32_t lhs;
        if (h.binary) {
            lhs = 2 * (h.I + i + 1);
        } else {
            if (v.empty()) r.fail("malformed latch line");
            lhs = v.front();
            v.erase(v.begin());
        }
        if (v.empty() || v.size() > 2) r.fail("malformed latch line");
        for (auto x : v) check_lit(x);
        check_lit(lhs);
        if (v.size() == 2 && v[1] != 0) r.fail("latch " + std::to_string(i) + " has non-zero reset");
        Wire f = N.add_Flop();
        define(lhs, f, "latch");
        latch_flops.push_back(f);
        latch_next.push_back(v[0]);
    }

    std::vector<std::uint32_t> outputs, bads;
    for (std::uint32_t i = 0; i < h.O; ++i) outputs.push_back(one(1, "output")[0]);
    for (std::uint32_t i = 0; i < h.B; ++i) bads.push_back(one(1, "bad")[0]);

    // And gates; ASCII files need not be topologically ordered.
    struct AndDef {
        std::uint32_t rhs0, rhs1;
    };
    std::unordered_map<std::uint32_t, AndDef> and_defs;
    std::vector<std::uint32_t> and_order;
    for (std::uint32_t i = 0; i < h.A; ++i) {
        std::uint32_t lhs, rhs0, rhs1;
        if (h.binary) {
            lhs = 2 * (h.I + h.L + i + 1);
            std::uint32_t d0 = r.varint();
            if (d0 == 0 || d0 > lhs) r.fail("invalid and-gate delta");
            rhs0 = lhs - d0;
            std::uint32_t d1 = r.varint();
            if (d1 > rhs0) r.fail("invalid and-gate delta");
            rhs1 = rhs0 - d1;
        } else {
            auto v = one(3, "and");
            lhs = v[0], rhs0 = v[1], rhs1 = v[2];
        }
        if (lhs & 1 || lhs == 0) r.fail("and-gate lhs must be a positive even literal");
        if (!var2wire[lhs >> 1].is_undef() || and_defs.contains(lhs >> 1))
            r.fail("literal " + std::to_string(lhs) + " defined twice");
        and_defs.emplace(lhs >> 1, AndDef{rhs0, rhs1});
        and_order.push_back(lhs >> 1);
    }

    // Iterative DFS; 1 marks gates on the current path.
    std::vector<std::uint8_t> on_path(h.M + 1, 0);
    auto build = [&](std::uint32_t root) {
        std::vector<std::pair<std::uint32_t, bool>> stack{{root, false}};
        while (!stack.empty()) {
            auto [v, expanded] = stack.back();
            if (!var2wire[v].is_undef()) {
                stack.pop_back();
                continue;
            }
            const AndDef& def = and_defs.at(v);
            if (expanded) {
                Wire a = var2wire[def.rhs0 >> 1] ^ (def.rhs0 & 1);
                Wire b = var2wire[def.rhs1 >> 1] ^ (def.rhs1 & 1);
                var2wire[v] = N.add_And(a, b);
                on_path[v] = 0;
                stack.pop_back();
                continue;
            }
            stack.back().second = true;
            on_path[v] = 1;
            for (std::uint32_t rhs : {def.rhs0, def.rhs1}) {
                std::uint32_t u = rhs >> 1;
                if (!var2wire[u].is_undef()) continue;
                if (!and_defs.contains(u)) r.fail("undefined literal " + std::to_string(rhs));
                if (on_path[u]) r.fail("combinational cycle through literal " + std::to_string(rhs));
                stack.emplace_back(u, false);
            }
        }
    };
    for (std::uint32_t v : and_order) build(v);

    auto wire_of = [&](std::uint32_t lit) {
        Wire w = var2wire[lit >> 1];
        if (w.is_undef()) r.fail("undefined literal " + std::to_string(lit));
        return w ^ (lit & 1);
    };

    for (std::uint32_t i = 0; i < h.L; ++i) N.set_flop_input(latch_flops[i], wire_of(latch_next[i]));

    const auto& props = bads.empty() ? outputs : bads;
    if (opts.property_index < 0 || static_cast<std::size_t>(opts.property_index) >= props.size())
        throw AigerError("aiger: property index " + std::to_string(opts.property_index) + " out of range");
    Wire selected = wire_of(props[opts.property_index]);
    bool selected_is_bad = !bads.empty() || opts.outputs == OutputKind::bad;
    N.set_property(selected_is_bad ? ~selected : selected);

    // Symbol table and comments.
    while (!r.eof()) {
        std::string_view l = r.line();
        if (l == "c") {
            while (!r.eof()) d.comments.emplace_back(r.line());
            break;
        }
        if (!l.empty()) d.symbols.emplace_back(l);
    }
    return d;
}

Netlist read_aiger(std::string_view bytes, const ReadOptions& opts)
{
    return parse(bytes, opts).netlist;
}

Design read_file(const std::filesystem::path& path, const ReadOptions& opts)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AigerError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), opts);
}

//=================================================================================================
// Writers:

namespace {

void put_varint(std::string& out, std::uint32_t x)
{
    while (x & ~0x7fu) {
        out.push_back(static_cast<char>((x & 0x7f) | 0x80));
        x >>= 7;
    }
    out.push_back(static_cast<char>(x));
}

}  // namespace

std::string write_abstracted(const Netlist& n, const WSet& abstr, bool binary)
{
    std::vector<std::uint32_t> var(n.size(), 0);
    std::uint32_t next = 1;
    for (GateId g : n.pis()) var[g] = next++;
    std::vector<GateId> freed, kept;
    for (GateId g : n.flops()) (abstr.has(Wire(g, false)) ? kept : freed).push_back(g);
    for (GateId g : freed) var[g] = next++;
    for (GateId g : kept) var[g] = next++;
    std::vector<GateId> ands;
    for (GateId g = 0; g < n.size(); ++g)
        if (n.kind(g) == GateKind::And) {
            var[g] = next++;
            ands.push_back(g);
        }

    // Gate 0 is constant true, AIGER literal 1.
    auto lit = [&](Wire w) -> std::uint32_t { return w.gate() == 0 ? 1u ^ w.sign() : 2 * var[w.gate()] + w.sign(); };

    std::uint32_t I = static_cast<std::uint32_t>(n.pis().size() + freed.size());
    std::uint32_t L = static_cast<std::uint32_t>(kept.size());
    std::uint32_t A = static_cast<std::uint32_t>(ands.size());

    std::ostringstream os;
    os << (binary ? "aig " : "aag ") << (next - 1) << ' ' << I << ' ' << L << " 1 " << A << '\n';
    if (!binary) {
        for (GateId g : n.pis()) os << 2 * var[g] << '\n';
        for (GateId g : freed) os << 2 * var[g] << '\n';
    }
    for (GateId g : kept) {
        if (!binary) os << 2 * var[g] << ' ';
        os << lit(n.flop_input(g)) << '\n';
    }
    os << lit(n.bad()) << '\n';

    std::string out = os.str();
    for (GateId g : ands) {
        std::uint32_t lhs = 2 * var[g];
        std::uint32_t r0 = lit(n.fanin0(g)), r1 = lit(n.fanin1(g));
        if (r0 < r1) std::swap(r0, r1);
        if (binary) {
            put_varint(out, lhs - r0);
            put_varint(out, r0 - r1);
        } else {
            out += std::to_string(lhs) + ' ' + std::to_string(r0) + ' ' + std::to_string(r1) + '\n';
        }
    }
    return out;
}

std::string write_flop_list(std::vector<std::uint32_t> latch_indices)
{
    std::sort(latch_indices.begin(), latch_indices.end());
    std::string out;
    for (auto i : latch_indices) out += std::to_string(i) + '\n';
    return out;
}

std::string write_flop_list(const Netlist& n, const WSet& abstr)
{
    std::vector<std::uint32_t> idx;
    for (GateId g : n.flops())
        if (abstr.has(Wire(g, false))) idx.push_back(n.ordinal(g));
    return write_flop_list(std::move(idx));
}

std::string write_witness(const Netlist& n, const Cex& cex, int property_index)
{
    std::string out = "1\nb" + std::to_string(property_index) + '\n';
    out.append(n.flops().size(), '0');  // all latches reset to zero
    out += '\n';
    for (int d = 0; d <= cex.depth; ++d) {
        for (lbool v : cex.pis[d]) out += v.to_char();
        out += '\n';
    }
    out += ".\n";
    return out;
}

Cex parse_witness(std::string_view text, const Netlist& n)
{
    std::vector<std::string_view> lines;
    Reader r(text);
    while (!r.eof()) lines.push_back(r.line());
    if (lines.size() < 4 || lines[0] != "1" || lines[1].empty() || lines[1][0] != 'b' || lines.back() != ".")
        throw AigerError("witness: malformed");

    auto to_lbool = [](char c) {
        if (c == '0') return lbool_0;
        if (c == '1') return lbool_1;
        if (c == 'x') return lbool_X;
        throw AigerError("witness: bad value character");
    };

    Cex cex;
    cex.depth = static_cast<int>(lines.size()) - 5;
    if (lines[2].size() != n.flops().size()) throw AigerError("witness: state line length mismatch");
    for (std::size_t i = 3; i + 1 < lines.size(); ++i) {
        if (lines[i].size() != n.pis().size()) throw AigerError("witness: input line length mismatch");
        std::vector<lbool> pis;
        for (char c : lines[i]) pis.push_back(to_lbool(c));
        cex.pis.push_back(std::move(pis));
        cex.flops.emplace_back(n.flops().size(), lbool_X);
    }
    for (std::size_t i = 0; i < n.flops().size(); ++i) cex.flops[0][i] = to_lbool(lines[2][i]);
    return cex;
}

}  // namespace locabs::aiger
