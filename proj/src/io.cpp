#include "tempus/io.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <vector>

namespace tempus {
namespace {

struct Lexer {
    std::istream& in;
    int line_no = 0;

    // Next content line as tokens; empty vector at end of input.
    std::vector<std::string> next(int* at_line = nullptr) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            std::vector<std::string> toks;
            std::string t;
            while (ss >> t) toks.push_back(t);
            if (toks.empty()) continue;
            if (at_line) *at_line = line_no;
            return toks;
        }
        if (at_line) *at_line = line_no;
        return {};
    }
};

int parse_int(const std::string& tok, int line, const char* what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, std::string("expected an integer for ") + what + ", got '" +
                                   tok + "'");
    }
}

int parse_count_header(const std::vector<std::string>& toks, int line, const char* kind,
                       int max_n) {
    if (toks.size() != 2)
        throw ParseError(line, std::string("header must be '") + kind + " <n>'");
    const int n = parse_int(toks[1], line, "n");
    if (n < 0 || n > max_n)
        throw ParseError(line, "n must be between 0 and " + std::to_string(max_n));
    return n;
}

void check_var(int v, int n, int line) {
    if (v < 0 || v >= n)
        throw ParseError(line, "index " + std::to_string(v) + " is out of range [0, " +
                                   std::to_string(n) + ")");
}

template <class Mask, class TokenToBit>
Mask parse_rel_set(const std::string& rels, int line, TokenToBit&& to_bit) {
    Mask msk = 0;
    std::size_t start = 0;
    while (start <= rels.size()) {
        const std::size_t bar = rels.find('|', start);
        const std::string tok =
            rels.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
        const Mask bit = to_bit(tok);
        if (bit == 0) throw ParseError(line, "unknown relation token '" + tok + "'");
        msk |= bit;
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return msk;
}

POTInstance parse_pot_body(Lexer& lex, const std::vector<std::string>& header, int hline) {
    POTInstance I;
    I.n = parse_count_header(header, hline, "pot", 64);
    int line = 0;
    for (auto toks = lex.next(&line); !toks.empty(); toks = lex.next(&line)) {
        if (toks[0] != "c" || toks.size() != 4)
            throw ParseError(line, "expected 'c <i> <j> <rels>'");
        const int i = parse_int(toks[1], line, "i");
        const int j = parse_int(toks[2], line, "j");
        check_var(i, I.n, line);
        check_var(j, I.n, line);
        if (i == j) throw ParseError(line, "constraint endpoints must differ");
        RelSet msk = parse_rel_set<RelSet>(toks[3], line, [](const std::string& tok) -> RelSet {
            auto r = rel4_from_token(tok);
            return r ? rel_bit(*r) : RelSet{0};
        });
        if (i > j) msk = converse_set(msk);
        const auto key = std::make_pair(std::min(i, j), std::max(i, j));
        const auto it = I.constraints.find(key);
        const RelSet merged = it == I.constraints.end() ? msk : static_cast<RelSet>(it->second & msk);
        if (merged == 0) throw EmptyConstraint(key.first, key.second);
        I.constraints[key] = merged;
    }
    return I;
}

IAInstance parse_ia_body(Lexer& lex, const std::vector<std::string>& header, int hline) {
    IAInstance I;
    I.n = parse_count_header(header, hline, "ia", 64);
    int line = 0;
    for (auto toks = lex.next(&line); !toks.empty(); toks = lex.next(&line)) {
        if (toks[0] != "c" || toks.size() != 4)
            throw ParseError(line, "expected 'c <i> <j> <rels>'");
        const int i = parse_int(toks[1], line, "i");
        const int j = parse_int(toks[2], line, "j");
        check_var(i, I.n, line);
        check_var(j, I.n, line);
        if (i == j) throw ParseError(line, "constraint endpoints must differ");
        IaRelSet msk =
            parse_rel_set<IaRelSet>(toks[3], line, [](const std::string& tok) -> IaRelSet {
                auto r = basic_rel_from_token(tok);
                return r ? ia_bit(*r) : IaRelSet{0};
            });
        if (i > j) msk = ia_converse_set(msk);
        const auto key = std::make_pair(std::min(i, j), std::max(i, j));
        const auto it = I.constraints.find(key);
        const IaRelSet merged =
            it == I.constraints.end() ? msk : static_cast<IaRelSet>(it->second & msk);
        if (merged == 0) throw EmptyConstraint(key.first, key.second);
        I.constraints[key] = merged;
    }
    return I;
}

CSPInstance parse_csp_body(Lexer& lex, const std::vector<std::string>& header, int hline) {
    CSPInstance I;
    I.n = parse_count_header(header, hline, "csp", 4096);
    int line = 0;
    for (auto toks = lex.next(&line); !toks.empty(); toks = lex.next(&line)) {
        if (toks[0] == "dom") {
            if (toks.size() != 2) throw ParseError(line, "expected 'dom <d>'");
            if (I.declared_dom) throw ParseError(line, "domain declared twice");
            if (!I.constraints.empty())
                throw ParseError(line, "domain must be declared before constraints");
            const int d = parse_int(toks[1], line, "d");
            if (d < 0) throw ParseError(line, "domain size must be nonnegative");
            I.declared_dom = d;
            continue;
        }
        if (toks[0] != "rel" || toks.size() < 3)
            throw ParseError(line, "expected 'rel <arity> <vars...> <tuple_count>'");
        const int arity = parse_int(toks[1], line, "arity");
        if (arity < 1) throw ParseError(line, "arity must be at least 1");
        if (static_cast<int>(toks.size()) != 3 + arity)
            throw ParseError(line, "expected " + std::to_string(arity) +
                                       " variables and a tuple count");
        CSPConstraint c;
        for (int p = 0; p < arity; ++p) {
            const int v = parse_int(toks[static_cast<std::size_t>(2 + p)], line, "variable");
            check_var(v, I.n, line);
            if (std::find(c.scope.begin(), c.scope.end(), v) != c.scope.end())
                throw ParseError(line, "scope variables must be distinct");
            c.scope.push_back(v);
        }
        const int tuples = parse_int(toks.back(), line, "tuple count");
        if (tuples < 0) throw ParseError(line, "tuple count must be nonnegative");
        for (int t = 0; t < tuples; ++t) {
            int tline = 0;
            const auto row = lex.next(&tline);
            if (row.empty()) throw ParseError(lex.line_no, "missing tuple line");
            if (static_cast<int>(row.size()) != arity)
                throw ParseError(tline, "tuple must list " + std::to_string(arity) + " values");
            std::vector<int> vals;
            for (const auto& tok : row) {
                const int v = parse_int(tok, tline, "value");
                if (v < 0) throw ParseError(tline, "values must be nonnegative");
                if (I.declared_dom && v >= *I.declared_dom)
                    throw ParseError(tline, "value " + std::to_string(v) +
                                                " is outside the declared domain");
                vals.push_back(v);
            }
            c.tuples.push_back(std::move(vals));
        }
        I.constraints.push_back(std::move(c));
    }
    return I;
}

PartialOrder parse_poset_body(Lexer& lex, const std::vector<std::string>& header, int hline) {
    const int n = parse_count_header(header, hline, "poset", 64);
    std::vector<int> elements(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) elements[static_cast<std::size_t>(v)] = v;
    std::vector<std::pair<int, int>> le_pairs;
    int line = 0;
    for (auto toks = lex.next(&line); !toks.empty(); toks = lex.next(&line)) {
        if (toks[0] != "le" || toks.size() != 3)
            throw ParseError(line, "expected 'le <i> <j>'");
        const int i = parse_int(toks[1], line, "i");
        const int j = parse_int(toks[2], line, "j");
        check_var(i, n, line);
        check_var(j, n, line);
        le_pairs.emplace_back(i, j);
    }
    return make_partial_order(std::move(elements), le_pairs);
}

} // namespace

ParsedInstance parse_instance(std::istream& in) {
    Lexer lex{in};
    int hline = 0;
    const auto header = lex.next(&hline);
    if (header.empty()) throw ParseError(std::max(hline, 1), "empty input");
    if (header[0] == "pot") return parse_pot_body(lex, header, hline);
    if (header[0] == "ia") return parse_ia_body(lex, header, hline);
    if (header[0] == "csp") return parse_csp_body(lex, header, hline);
    if (header[0] == "poset") return parse_poset_body(lex, header, hline);
    throw ParseError(hline, "unknown problem kind '" + header[0] + "'");
}

ParsedInstance parse_instance_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

POTInstance parse_pot(std::istream& in) {
    auto inst = parse_instance(in);
    if (auto* p = std::get_if<POTInstance>(&inst)) return std::move(*p);
    throw ParseError(1, "expected a 'pot' instance");
}

IAInstance parse_ia(std::istream& in) {
    auto inst = parse_instance(in);
    if (auto* p = std::get_if<IAInstance>(&inst)) return std::move(*p);
    throw ParseError(1, "expected an 'ia' instance");
}

CSPInstance parse_csp(std::istream& in) {
    auto inst = parse_instance(in);
    if (auto* p = std::get_if<CSPInstance>(&inst)) return std::move(*p);
    throw ParseError(1, "expected a 'csp' instance");
}

PartialOrder parse_poset(std::istream& in) {
    auto inst = parse_instance(in);
    if (auto* p = std::get_if<PartialOrder>(&inst)) return std::move(*p);
    throw ParseError(1, "expected a 'poset' instance");
}

std::string serialize_pot(const POTInstance& I) {
    std::ostringstream out;
    out << "pot " << I.n << "\n";
    for (const auto& [pair, msk] : I.constraints) {
        if (msk == kRelSetFull) continue;
        if (msk == 0) throw std::invalid_argument("cannot serialize an empty relation set");
        out << "c " << pair.first << " " << pair.second << " ";
        bool first = true;
        for (int r = 0; r < 4; ++r)
            if (rel_in(msk, static_cast<Rel4>(r))) {
                if (!first) out << "|";
                out << rel4_token(static_cast<Rel4>(r));
                first = false;
            }
        out << "\n";
    }
    return out.str();
}

std::string serialize_ia(const IAInstance& I) {
    std::ostringstream out;
    out << "ia " << I.n << "\n";
    for (const auto& [pair, msk] : I.constraints) {
        if (msk == kIaRelSetFull) continue;
        if (msk == 0) throw std::invalid_argument("cannot serialize an empty relation set");
        out << "c " << pair.first << " " << pair.second << " ";
        bool first = true;
        for (int r = 0; r < kBasicRelCount; ++r)
            if (ia_in(msk, static_cast<BasicRel>(r))) {
                if (!first) out << "|";
                out << basic_rel_token(static_cast<BasicRel>(r));
                first = false;
            }
        out << "\n";
    }
    return out.str();
}

std::string serialize_csp(const CSPInstance& I) {
    std::ostringstream out;
    out << "csp " << I.n << "\n";
    if (I.declared_dom) out << "dom " << *I.declared_dom << "\n";
    for (const auto& c : I.constraints) {
        out << "rel " << c.scope.size();
        for (int v : c.scope) out << " " << v;
        out << " " << c.tuples.size() << "\n";
        for (const auto& t : c.tuples) {
            for (std::size_t p = 0; p < t.size(); ++p) out << (p ? " " : "") << t[p];
            out << "\n";
        }
    }
    return out.str();
}

std::string serialize_poset(const PartialOrder& P) {
    std::ostringstream out;
    out << "poset " << P.size() << "\n";
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = 0; j < P.size(); ++j)
            if (i != j && P.le_idx(static_cast<int>(i), static_cast<int>(j)))
                out << "le " << i << " " << j << "\n";
    return out.str();
}

std::string serialize_instance(const ParsedInstance& inst) {
    if (const auto* p = std::get_if<POTInstance>(&inst)) return serialize_pot(*p);
    if (const auto* p = std::get_if<IAInstance>(&inst)) return serialize_ia(*p);
    if (const auto* p = std::get_if<CSPInstance>(&inst)) return serialize_csp(*p);
    return serialize_poset(std::get<PartialOrder>(inst));
}

} // namespace tempus
