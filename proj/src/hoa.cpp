// Distributed under the MIT License.
// See LICENSE for details.

#include "ldpa/hoa.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <sstream>

namespace ldpa {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string label_cube(const Alphabet& alphabet, Letter l) {
    std::size_t k = alphabet.props().size();
    if (k == 0)
        return "t";
    std::uint32_t bits = alphabet.letter_bits(l);
    std::string out;
    for (std::size_t i = 0; i < k; ++i) {
        if (i)
            out += " & ";
        if (!((bits >> i) & 1u))
            out += "!";
        out += std::to_string(i);
    }
    return out;
}

// Canonical HOA formula for "parity min even k".
std::string parity_min_even_formula(std::uint32_t k) {
    std::string f;
    bool composite = false;
    for (std::uint32_t step = 0; step < k; ++step) {
        std::uint32_t i = k - 1 - step;
        std::string atom = (i % 2 == 0 ? "Inf(" : "Fin(") + std::to_string(i) + ")";
        if (f.empty()) {
            f = atom;
        } else {
            f = atom + (i % 2 == 0 ? " | " : " & ") + (composite ? "(" + f + ")" : f);
            composite = true;
        }
    }
    return f.empty() ? "t" : f;
}

void emit_common(std::ostringstream& os, const Alphabet& alphabet, std::uint32_t num_states,
                 std::uint32_t initial) {
    os << "HOA: v1\n";
    os << "States: " << num_states << "\n";
    os << "Start: " << initial << "\n";
    os << "AP: " << alphabet.props().size();
    for (const auto& p : alphabet.props())
        os << " " << quote(p);
    os << "\n";
    if (alphabet.is_symbols())
        os << "alphabet: symbols\n";
}

void emit_state_header(std::ostringstream& os, std::uint32_t q,
                       const std::vector<std::string>& names) {
    os << "State: " << q;
    if (q < names.size() && !names[q].empty())
        os << " " << quote(names[q]);
    os << "\n";
}

} // namespace

std::string emit_hoa(const Ldba& a) {
    if (!a.jumps.empty())
        throw std::invalid_argument("cannot serialize epsilon jumps; eliminate_jumps first");
    std::ostringstream os;
    emit_common(os, a.alphabet, a.num_states, a.initial);
    os << "Acceptance: 1 Inf(0)\n";
    os << "acc-name: Buchi\n";
    os << "properties: trans-labels explicit-labels trans-acc\n";
    os << "ldba-qd:";
    for (std::uint32_t q = 0; q < a.num_states; ++q)
        if (a.in_qd[q])
            os << " " << q;
    os << "\n";
    os << "--BODY--\n";
    for (std::uint32_t q = 0; q < a.num_states; ++q) {
        emit_state_header(os, q, a.state_names);
        for (Letter l = 0; l < a.alphabet.size(); ++l) {
            std::vector<std::pair<std::uint32_t, bool>> edges;
            for (std::size_t i = 0; i < a.succ[q][l].size(); ++i)
                edges.emplace_back(a.succ[q][l][i], a.acc[q][l][i]);
            std::sort(edges.begin(), edges.end());
            for (auto [t, accepting] : edges) {
                os << "[" << label_cube(a.alphabet, l) << "] " << t;
                if (accepting)
                    os << " {0}";
                os << "\n";
            }
        }
    }
    os << "--END--\n";
    return os.str();
}

std::string emit_hoa(const Dpa& d) {
    std::ostringstream os;
    emit_common(os, d.alphabet, d.num_states, d.initial);
    std::uint32_t sets = d.num_colors + 1; // set index == color; set 0 unused
    os << "Acceptance: " << sets << " " << parity_min_even_formula(sets) << "\n";
    os << "acc-name: parity min even " << sets << "\n";
    os << "properties: trans-labels explicit-labels trans-acc colored deterministic complete\n";
    os << "--BODY--\n";
    for (std::uint32_t q = 0; q < d.num_states; ++q) {
        emit_state_header(os, q, d.state_names);
        for (Letter l = 0; l < d.alphabet.size(); ++l)
            os << "[" << label_cube(d.alphabet, l) << "] " << d.step(q, l) << " {"
               << d.edge_color(q, l) << "}\n";
    }
    os << "--END--\n";
    return os.str();
}

// ── parsing ─────────────────────────────────────────────────────────────────

namespace {

enum class Tok { Word, Header, String, Int, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    std::uint64_t value = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip();
        if (pos_ >= text_.size())
            return {Tok::End, ""};
        char c = text_[pos_];
        if (c == '"') {
            ++pos_;
            std::string s;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\\' && pos_ + 1 < text_.size())
                    ++pos_;
                s += text_[pos_++];
            }
            if (pos_ >= text_.size())
                throw HoaError("unterminated string");
            ++pos_;
            return {Tok::String, s};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            std::string s;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
                s += text_[pos_++];
            }
            return {Tok::Int, s, v};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
            std::string s;
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '-')
                    s += text_[pos_++];
                else
                    break;
            }
            if (pos_ < text_.size() && text_[pos_] == ':') {
                ++pos_;
                return {Tok::Header, s};
            }
            return {Tok::Word, s};
        }
        ++pos_;
        return {Tok::Punct, std::string(1, c)};
    }

private:
    void skip() {
        for (;;) {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ + 1 < text_.size() && text_[pos_] == '/' && text_[pos_ + 1] == '*') {
                pos_ += 2;
                while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/'))
                    ++pos_;
                pos_ = std::min(pos_ + 2, text_.size());
                continue;
            }
            break;
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

// Label expression over AP indices, evaluated against an assignment bitmask.
struct LabelExpr {
    enum Kind { True, False, Ap, Not, And, Or } kind;
    std::uint32_t ap = 0;
    std::unique_ptr<LabelExpr> left, right;

    bool eval(std::uint32_t bits) const {
        switch (kind) {
        case True:
            return true;
        case False:
            return false;
        case Ap:
            return (bits >> ap) & 1u;
        case Not:
            return !left->eval(bits);
        case And:
            return left->eval(bits) && right->eval(bits);
        case Or:
            return left->eval(bits) || right->eval(bits);
        }
        return false;
    }
};

class HoaParser {
public:
    explicit HoaParser(const std::string& text) : lexer_(text) { advance(); }

    Automaton parse() {
        headers();
        body();
        finalize_checks();
        if (is_parity_)
            return build_dpa();
        return build_ldba();
    }

private:
    void advance() { cur_ = lexer_.next(); }

    void expect_punct(const std::string& p) {
        if (cur_.kind != Tok::Punct || cur_.text != p)
            throw HoaError("expected '" + p + "'");
        advance();
    }

    std::uint64_t expect_int(const std::string& what) {
        if (cur_.kind != Tok::Int)
            throw HoaError("expected integer for " + what);
        std::uint64_t v = cur_.value;
        advance();
        return v;
    }

    // "--BODY--" and "--END--" lex as single words starting with "--"
    bool at_marker(const char* marker) const {
        return cur_.kind == Tok::Word && cur_.text == marker;
    }

    bool at_header_boundary() const {
        return cur_.kind == Tok::Header || cur_.kind == Tok::End || at_marker("--BODY--");
    }

    void headers() {
        if (!(cur_.kind == Tok::Header && cur_.text == "HOA"))
            throw HoaError("missing HOA: header");
        advance();
        if (!(cur_.kind == Tok::Word && cur_.text == "v1"))
            throw HoaError("unsupported HOA version");
        advance();
        while (cur_.kind == Tok::Header) {
            std::string h = cur_.text;
            advance();
            if (h == "States") {
                num_states_ = static_cast<std::uint32_t>(expect_int("States"));
                have_states_ = true;
            } else if (h == "Start") {
                initial_ = static_cast<std::uint32_t>(expect_int("Start"));
                if (cur_.kind == Tok::Punct && cur_.text == "&")
                    throw HoaError("conjunctive start states are not supported");
            } else if (h == "AP") {
                std::uint64_t n = expect_int("AP");
                for (std::uint64_t i = 0; i < n; ++i) {
                    if (cur_.kind != Tok::String)
                        throw HoaError("expected quoted AP name");
                    aps_.push_back(cur_.text);
                    advance();
                }
            } else if (h == "Acceptance") {
                acceptance_sets_ = static_cast<std::uint32_t>(expect_int("Acceptance"));
                while (!at_header_boundary())
                    advance(); // formula text; acc-name is authoritative
            } else if (h == "acc-name") {
                while (!at_header_boundary()) {
                    acc_name_.push_back(cur_.text);
                    advance();
                }
            } else if (h == "alphabet") {
                if (cur_.kind == Tok::Word && cur_.text == "symbols") {
                    symbols_mode_ = true;
                    advance();
                } else {
                    throw HoaError("unknown alphabet mode");
                }
            } else if (h == "ldba-qd") {
                while (cur_.kind == Tok::Int) {
                    qd_.push_back(static_cast<std::uint32_t>(cur_.value));
                    advance();
                }
            } else {
                // tool:, name:, properties:, ... skip values
                while (!at_header_boundary())
                    advance();
            }
        }
        if (!have_states_)
            throw HoaError("missing States: header");
        if (!at_marker("--BODY--"))
            throw HoaError("expected --BODY--");
        advance();
        resolve_acceptance();
        alphabet_ = symbols_mode_ ? Alphabet::symbols(aps_) : Alphabet::subsets(aps_);
    }

    void resolve_acceptance() {
        if (acc_name_.empty()) {
            if (acceptance_sets_ == 1) {
                is_parity_ = false; // bare "Acceptance: 1 Inf(0)" reads as Buchi
                return;
            }
            throw HoaError("unsupported acceptance: expected Buchi or parity min even");
        }
        if (acc_name_[0] == "Buchi") {
            if (acceptance_sets_ != 1)
                throw HoaError("Buchi acceptance needs exactly one set");
            is_parity_ = false;
            return;
        }
        if (acc_name_[0] == "parity" && acc_name_.size() >= 4 && acc_name_[1] == "min" &&
            acc_name_[2] == "even") {
            is_parity_ = true;
            return;
        }
        std::string n;
        for (const auto& w : acc_name_)
            n += (n.empty() ? "" : " ") + w;
        throw HoaError("unsupported acceptance '" + n + "'");
    }

    std::unique_ptr<LabelExpr> label_or() {
        auto l = label_and();
        while (cur_.kind == Tok::Punct && cur_.text == "|") {
            advance();
            auto e = std::make_unique<LabelExpr>();
            e->kind = LabelExpr::Or;
            e->left = std::move(l);
            e->right = label_and();
            l = std::move(e);
        }
        return l;
    }

    std::unique_ptr<LabelExpr> label_and() {
        auto l = label_unary();
        while (cur_.kind == Tok::Punct && cur_.text == "&") {
            advance();
            auto e = std::make_unique<LabelExpr>();
            e->kind = LabelExpr::And;
            e->left = std::move(l);
            e->right = label_unary();
            l = std::move(e);
        }
        return l;
    }

    std::unique_ptr<LabelExpr> label_unary() {
        auto e = std::make_unique<LabelExpr>();
        if (cur_.kind == Tok::Punct && cur_.text == "!") {
            advance();
            e->kind = LabelExpr::Not;
            e->left = label_unary();
            return e;
        }
        if (cur_.kind == Tok::Punct && cur_.text == "(") {
            advance();
            e = label_or();
            expect_punct(")");
            return e;
        }
        if (cur_.kind == Tok::Word && cur_.text == "t") {
            advance();
            e->kind = LabelExpr::True;
            return e;
        }
        if (cur_.kind == Tok::Word && cur_.text == "f") {
            advance();
            e->kind = LabelExpr::False;
            return e;
        }
        if (cur_.kind == Tok::Int) {
            if (cur_.value >= aps_.size())
                throw HoaError("label references AP " + cur_.text + " beyond AP count");
            e->kind = LabelExpr::Ap;
            e->ap = static_cast<std::uint32_t>(cur_.value);
            advance();
            return e;
        }
        throw HoaError("malformed label expression");
    }

    struct Edge {
        Letter letter;
        std::uint32_t target;
        std::vector<std::uint32_t> sets;
    };

    void body() {
        edges_.assign(num_states_, {});
        names_.assign(num_states_, "");
        std::int64_t current = -1;
        for (;;) {
            if (at_marker("--END--")) {
                advance();
                return;
            }
            if (cur_.kind == Tok::End)
                throw HoaError("missing --END--");
            if (cur_.kind == Tok::Header && cur_.text == "State") {
                advance();
                std::uint64_t q = expect_int("state id");
                if (q >= num_states_)
                    throw HoaError("state id " + std::to_string(q) + " out of range");
                current = static_cast<std::int64_t>(q);
                if (cur_.kind == Tok::String) {
                    names_[q] = cur_.text;
                    advance();
                }
                if (cur_.kind == Tok::Punct && cur_.text == "{")
                    throw HoaError("state-based acceptance is not supported");
                continue;
            }
            if (cur_.kind == Tok::Punct && cur_.text == "[") {
                if (current < 0)
                    throw HoaError("edge before any State:");
                advance();
                auto expr = label_or();
                expect_punct("]");
                std::uint64_t target = expect_int("edge target");
                if (target >= num_states_)
                    throw HoaError("edge target out of range");
                std::vector<std::uint32_t> sets;
                if (cur_.kind == Tok::Punct && cur_.text == "{") {
                    advance();
                    while (cur_.kind == Tok::Int) {
                        if (cur_.value >= acceptance_sets_)
                            throw HoaError("acceptance set " + cur_.text + " out of range");
                        sets.push_back(static_cast<std::uint32_t>(cur_.value));
                        advance();
                    }
                    expect_punct("}");
                }
                for (Letter l = 0; l < alphabet_.size(); ++l) {
                    if (expr->eval(alphabet_.letter_bits(l)))
                        edges_[static_cast<std::size_t>(current)].push_back(
                            {l, static_cast<std::uint32_t>(target), sets});
                }
                continue;
            }
            throw HoaError("unexpected token '" + cur_.text + "' in body");
        }
    }

    void finalize_checks() {
        if (initial_ >= num_states_)
            throw HoaError("start state out of range");
        for (std::uint32_t q : qd_)
            if (q >= num_states_)
                throw HoaError("ldba-qd state out of range");
    }

    Automaton build_ldba() {
        Ldba a;
        a.alphabet = alphabet_;
        a.initial = initial_;
        for (std::uint32_t q = 0; q < num_states_; ++q)
            a.add_state(false);
        for (std::uint32_t q : qd_)
            a.in_qd[q] = true;
        for (std::uint32_t q = 0; q < num_states_; ++q) {
            for (const Edge& e : edges_[q]) {
                bool accepting = !e.sets.empty();
                a.add_edge(q, e.letter, e.target, accepting);
            }
        }
        a.state_names = names_;
        if (std::all_of(names_.begin(), names_.end(), [](const auto& n) { return n.empty(); }))
            a.state_names.clear();
        return a;
    }

    Automaton build_dpa() {
        Dpa d;
        d.alphabet = alphabet_;
        d.initial = initial_;
        std::vector<bool> defined(std::size_t(num_states_) * alphabet_.size(), false);
        for (std::uint32_t q = 0; q < num_states_; ++q)
            d.add_state();
        std::uint32_t max_color = 1;
        bool has_zero = false;
        for (std::uint32_t q = 0; q < num_states_; ++q) {
            for (const Edge& e : edges_[q]) {
                if (e.sets.size() != 1)
                    throw HoaError("parity automaton edge needs exactly one color");
                std::size_t idx = d.edge(q, e.letter);
                if (defined[idx])
                    throw HoaError("parity automaton is not deterministic at state " +
                                   std::to_string(q));
                defined[idx] = true;
                d.target[idx] = e.target;
                d.color[idx] = e.sets[0];
                has_zero |= e.sets[0] == 0;
                max_color = std::max(max_color, e.sets[0]);
            }
        }
        for (std::uint32_t q = 0; q < num_states_; ++q)
            for (Letter l = 0; l < alphabet_.size(); ++l)
                if (!defined[d.edge(q, l)])
                    throw HoaError("parity automaton is not complete at state " +
                                   std::to_string(q));
        std::uint32_t declared = acceptance_sets_ > 1 ? acceptance_sets_ - 1 : 1;
        if (has_zero) {
            // shift to the 1-based color range; a uniform +2 keeps the parity
            // of every cycle minimum
            for (auto& c : d.color)
                c += 2;
            max_color += 2;
            declared += 2;
        }
        d.num_colors = std::max(max_color, declared);
        d.state_names = names_;
        if (std::all_of(names_.begin(), names_.end(), [](const auto& n) { return n.empty(); }))
            d.state_names.clear();
        return d;
    }

    Lexer lexer_;
    Token cur_;
    std::uint32_t num_states_ = 0;
    bool have_states_ = false;
    std::uint32_t initial_ = 0;
    std::vector<std::string> aps_;
    std::uint32_t acceptance_sets_ = 0;
    std::vector<std::string> acc_name_;
    bool symbols_mode_ = false;
    bool is_parity_ = false;
    std::vector<std::uint32_t> qd_;
    Alphabet alphabet_;
    std::vector<std::vector<Edge>> edges_;
    std::vector<std::string> names_;
};

} // namespace

Automaton parse_hoa(const std::string& text) { return HoaParser(text).parse(); }

// ── DOT ─────────────────────────────────────────────────────────────────────

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

std::string dot_state_name(const std::vector<std::string>& names, std::uint32_t q) {
    if (q < names.size() && !names[q].empty())
        return names[q];
    return std::to_string(q);
}

} // namespace

std::string to_dot(const Ldba& a) {
    std::ostringstream os;
    os << "digraph ldba {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  init [shape=point];\n  init -> s" << a.initial << ";\n";
    for (std::uint32_t q = 0; q < a.num_states; ++q) {
        os << "  s" << q << " [label=\"" << dot_escape(dot_state_name(a.state_names, q)) << "\"";
        if (a.in_qd[q])
            os << ", style=filled, fillcolor=lightgrey";
        os << "];\n";
    }
    for (std::uint32_t q = 0; q < a.num_states; ++q) {
        for (Letter l = 0; l < a.alphabet.size(); ++l) {
            for (std::size_t i = 0; i < a.succ[q][l].size(); ++i) {
                os << "  s" << q << " -> s" << a.succ[q][l][i] << " [label=\""
                   << dot_escape(a.alphabet.letter_name(l)) << "\"";
                if (a.acc[q][l][i])
                    os << ", penwidth=2.5";
                os << "];\n";
            }
        }
    }
    for (auto [q, p] : a.jumps)
        os << "  s" << q << " -> s" << p << " [label=\"eps\", style=dashed];\n";
    os << "}\n";
    return os.str();
}

std::string to_dot(const Dpa& d) {
    std::ostringstream os;
    os << "digraph dpa {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  init [shape=point];\n  init -> s" << d.initial << ";\n";
    for (std::uint32_t q = 0; q < d.num_states; ++q)
        os << "  s" << q << " [label=\"" << dot_escape(dot_state_name(d.state_names, q))
           << "\"];\n";
    for (std::uint32_t q = 0; q < d.num_states; ++q)
        for (Letter l = 0; l < d.alphabet.size(); ++l)
            os << "  s" << q << " -> s" << d.step(q, l) << " [label=\""
               << dot_escape(d.alphabet.letter_name(l)) << "/" << d.edge_color(q, l) << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace ldpa
