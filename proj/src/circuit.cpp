#include "gseforge/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gsef {

void Circuit::append(GateKind k, int a, int b, double param) {
    if (a < 0 || a >= n_) throw CircuitError("gate qubit out of range");
    if (is_two_qubit(k)) {
        if (b < 0 || b >= n_ || b == a) throw CircuitError("bad second qubit");
    } else if (b != -1) {
        throw CircuitError("single-qubit gate given two qubits");
    }
    gates_.push_back({k, a, b, param});
}

void Circuit::append(const Circuit& other) {
    for (const auto& g : other.gates_) gates_.push_back(g);
}

Circuit Circuit::inverse() const {
    Circuit inv(n_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        switch (it->kind) {
            case GateKind::S: inv.append(GateKind::Sdg, it->a); break;
            case GateKind::Sdg: inv.append(GateKind::S, it->a); break;
            case GateKind::Rz: inv.append(GateKind::Rz, it->a, -1, -it->param); break;
            case GateKind::Measure:
            case GateKind::Depol2: throw CircuitError("cannot invert measurement/noise");
            default: inv.append(it->kind, it->a, it->b, it->param);
        }
    }
    return inv;
}

bool Circuit::is_clifford() const {
    for (const auto& g : gates_)
        if (g.kind == GateKind::Rz) {
            double r = g.param / (M_PI / 2);
            if (std::abs(r - std::round(r)) > 1e-9) return false;
        }
    return true;
}

int Circuit::two_qubit_count() const {
    int c = 0;
    for (const auto& g : gates_)
        if (is_two_qubit(g.kind) && g.kind != GateKind::Depol2) ++c;
    return c;
}

int Circuit::measured_count() const {
    int c = 0;
    for (const auto& g : gates_)
        if (g.kind == GateKind::Measure) ++c;
    return c;
}

int Circuit::depth() const {
    std::vector<int> clock(n_, 0);
    int d = 0;
    for (const auto& g : gates_) {
        if (g.kind == GateKind::Measure || g.kind == GateKind::Depol2) continue;
        int t;
        if (is_two_qubit(g.kind))
            t = std::max(clock[g.a], clock[g.b]) + 1;
        else
            t = clock[g.a] + 1;
        clock[g.a] = t;
        if (is_two_qubit(g.kind)) clock[g.b] = t;
        d = std::max(d, t);
    }
    return d;
}

std::string Circuit::to_text() const {
    std::ostringstream out;
    out << "# qubits " << n_ << '\n';
    char buf[64];
    for (const auto& g : gates_) {
        switch (g.kind) {
            case GateKind::H: out << "H " << g.a; break;
            case GateKind::S: out << "S " << g.a; break;
            case GateKind::Sdg: out << "SDG " << g.a; break;
            case GateKind::X: out << "X " << g.a; break;
            case GateKind::Y: out << "Y " << g.a; break;
            case GateKind::Z: out << "Z " << g.a; break;
            case GateKind::CX: out << "CX " << g.a << ' ' << g.b; break;
            case GateKind::CZ: out << "CZ " << g.a << ' ' << g.b; break;
            case GateKind::Swap: out << "SWAP " << g.a << ' ' << g.b; break;
            case GateKind::Rz:
                std::snprintf(buf, sizeof buf, "RZ %.17g %d", g.param, g.a);
                out << buf;
                break;
            case GateKind::Measure: out << "M " << g.a; break;
            case GateKind::Depol2:
                std::snprintf(buf, sizeof buf, "DEPOL2 %.17g %d %d", g.param, g.a, g.b);
                out << buf;
                break;
        }
        out << '\n';
    }
    return out.str();
}

Circuit Circuit::from_text(const std::string& text, int n_qubits) {
    std::istringstream in(text);
    std::string line;
    std::vector<Gate> staged;
    int maxq = -1;
    int declared = n_qubits;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            std::istringstream hs(line.substr(hash + 1));
            std::string word;
            int n;
            if (hs >> word >> n && word == "qubits") declared = std::max(declared, n);
            line = line.substr(0, hash);
        }
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        Gate g{};
        auto need = [&](int& v) {
            if (!(ls >> v)) throw CircuitError("bad circuit line: " + line);
        };
        if (op == "H") { g.kind = GateKind::H; need(g.a); }
        else if (op == "S") { g.kind = GateKind::S; need(g.a); }
        else if (op == "SDG") { g.kind = GateKind::Sdg; need(g.a); }
        else if (op == "X") { g.kind = GateKind::X; need(g.a); }
        else if (op == "Y") { g.kind = GateKind::Y; need(g.a); }
        else if (op == "Z") { g.kind = GateKind::Z; need(g.a); }
        else if (op == "CX") { g.kind = GateKind::CX; need(g.a); need(g.b); }
        else if (op == "CZ") { g.kind = GateKind::CZ; need(g.a); need(g.b); }
        else if (op == "SWAP") { g.kind = GateKind::Swap; need(g.a); need(g.b); }
        else if (op == "RZ") {
            g.kind = GateKind::Rz;
            if (!(ls >> g.param)) throw CircuitError("bad RZ line: " + line);
            need(g.a);
        } else if (op == "M") { g.kind = GateKind::Measure; need(g.a); }
        else if (op == "DEPOL2") {
            g.kind = GateKind::Depol2;
            if (!(ls >> g.param)) throw CircuitError("bad DEPOL2 line: " + line);
            need(g.a); need(g.b);
        } else {
            throw CircuitError("unknown gate: " + op);
        }
        maxq = std::max({maxq, g.a, g.b});
        staged.push_back(g);
    }
    Circuit c(std::max(declared, maxq + 1));
    for (const auto& g : staged) c.gates().push_back(g);
    return c;
}

std::uint64_t Circuit::content_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char ch : to_text()) {
        h ^= std::uint8_t(ch);
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace gsef
