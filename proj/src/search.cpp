#include "cyverify/search.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cyv {

namespace {

long long ipow(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// candidate layout: one block of line pairs, one block of extensions, and an
// optional block of spectator-padded extensions, each of size side^k
struct Layout {
    std::vector<std::string> labels;
    long long side = 0;
    long long block = 0;
    int blocks = 0;
};

Layout layout_of(const SearchConfig& cfg) {
    Layout l;
    l.labels = cfg.x->basis.at(2);
    l.side = 2 * cfg.box + 1;
    l.block = ipow(l.side, static_cast<int>(l.labels.size()));
    l.blocks = cfg.rank_max >= 3 ? 3 : 2;
    return l;
}

std::vector<long long> decode(const Layout& l, long long local, long long box) {
    std::vector<long long> c(l.labels.size());
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        c[i] = local % l.side - box;
        local /= l.side;
    }
    return c;
}

GradedClass divisor_class(const GeomPtr& g, const Layout& l,
                          const std::vector<long long>& coeffs) {
    GradedClass d(g);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        d.add_coeff(2, static_cast<int>(i), Rat(coeffs[i]));
    return d;
}

std::string coeff_list(const std::vector<long long>& c) {
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(c[i]);
    }
    return out + ")";
}

bool first_nonzero_negative(const std::vector<long long>& c) {
    for (long long v : c) {
        if (v > 0) return false;
        if (v < 0) return true;
    }
    return false;
}

std::map<std::string, Rat> coeff_map(const Layout& l, const std::vector<long long>& c,
                                     long long scale) {
    std::map<std::string, Rat> m;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) m[l.labels[i]] = Rat(scale * c[i]);
    return m;
}

void evaluate_line_pair(const SearchConfig& cfg, const Layout& l, Candidate& c) {
    if (first_nonzero_negative(c.coeffs)) {
        c.screen = "mirror";
        c.fate = "mirror of the opposite-sign pair already enumerated";
        return;
    }
    GradedClass d = divisor_class(cfg.x, l, c.coeffs);
    GradedClass second = (d * d) * Rat(-1);
    c.cls = second.to_string();
    if (!(second == cfg.target)) {
        c.screen = "class-mismatch";
        c.fate = "second class " + second.to_string() + " is not the demanded " +
                 cfg.target.to_string();
        return;
    }
    Rat bog = (cfg.target * Rat(4) * cfg.omega).integrate();
    if (bog < Rat(0)) {
        c.screen = "bogomolov";
        c.fate = "the bound 4 c2 - c1^2 pairs to " + to_string(bog) +
                 " with the polarization; no semistable sheaf carries this class";
        return;
    }
    Rat deg = pairing_degree(d, cfg.omega);
    if (deg != Rat(0)) {
        c.screen = "slope-unequal";
        c.fate = "the summands have degrees " + to_string(deg) + " and " +
                 to_string(-deg) + "; a polystable sum needs equal slopes";
        return;
    }
    SheafExpr sum = SheafExpr::line(cfg.x, coeff_map(l, c.coeffs, 1))
                        .direct_sum(SheafExpr::line(cfg.x, coeff_map(l, c.coeffs, -1)));
    StabilityCert cert = assess_line_sum(cfg.x, sum, cfg.omega);
    c.survives = true;
    c.screen = "survivor";
    c.stable_certified = cert.verdict == StabilityCert::Verdict::Polystable;
    c.fate = c.stable_certified
                 ? "a polystable pair of opposite line bundles with the demanded class"
                 : "slopes agree but the polystability certificate did not close";
}

void evaluate_extension(const SearchConfig& cfg, const Layout& l, Candidate& c) {
    GradedClass d = divisor_class(cfg.x, l, c.coeffs);
    GradedClass curve = cfg.target + d * d;
    c.cls = curve.to_string();
    for (std::size_t i = 0; i < cfg.x->basis.at(4).size(); ++i) {
        if (curve.coeff(4, static_cast<int>(i)) < Rat(0)) {
            c.screen = "class-negative";
            c.fate = "the curve class " + curve.to_string() + " has a negative " +
                     cfg.x->basis.at(4)[i] + " coefficient and cannot be effective";
            return;
        }
    }
    Rat bog = (cfg.target * Rat(4) * cfg.omega).integrate();
    if (bog < Rat(0)) {
        c.screen = "bogomolov";
        c.fate = "the bound 4 c2 - c1^2 pairs to " + to_string(bog) +
                 " with the polarization; no semistable sheaf carries this class";
        return;
    }
    for (const std::string& nf : cfg.x->nef) {
        Rat p = (curve * GradedClass::basis_element(cfg.x, 2, nf)).integrate();
        if (p < Rat(0)) {
            c.screen = "nef-negative";
            c.fate = "the curve class pairs to " + to_string(p) + " with the nef class " +
                     nf + "; an effective curve cannot do that";
            return;
        }
    }
    Rat deg = pairing_degree(d, cfg.omega);
    if (deg > Rat(0)) {
        c.screen = "slope-positive";
        c.fate = "the sub line bundle has degree " + to_string(deg) +
                 " and would destabilize";
        return;
    }
    c.survives = true;
    c.screen = "survivor";
    c.fate = "passes every screen; whether a stable extension with this data exists "
             "stays unsettled";
    if (c.templ == "extension-plus-line")
        c.fate += "; the trivial spectator line keeps the slope at zero and defers "
                  "polystability to the rank-two piece";
}

// survivors of the extension shape get the ambient extension-class dimensions
// of the square of the sub line bundle attached, so a reader can see whether
// the construction can even start from ambient classes
void annotate(Ledger& led, const SearchConfig& cfg, const Layout& l, Candidate& c) {
    if (c.templ == "line-pair") return;
    SheafExpr sq = SheafExpr::line(cfg.x, coeff_map(l, c.coeffs, 2));
    Interval h1 = led.dims(sq, 1);
    Interval h2 = led.dims(sq, 2);
    c.fate += "; ambient extension classes h^1 = " + h1.to_string() +
              ", obstruction space h^2 = " + h2.to_string();
    if (h1.is_exact() && h1.lo == 0)
        c.fate += "; with no ambient classes the extension must come from classes "
                  "supported on the curve itself";
}

void require_valid(const SearchConfig& cfg) {
    if (!cfg.x) throw std::runtime_error("search needs a geometry");
    if (cfg.x->dim != 3) throw std::runtime_error("the search runs on a fibred threefold");
    if (!cfg.s) throw std::runtime_error("search needs the base surface of the fibration");
    if (cfg.box < 0) throw std::runtime_error("the coefficient box radius cannot be negative");
}

}  // namespace

std::string config_fingerprint(const SearchConfig& cfg) {
    std::ostringstream os;
    os << geom_name(cfg.x->id) << "|" << (cfg.s ? geom_name(cfg.s->id) : "-") << "|t:"
       << cfg.target.to_string() << "|w:" << cfg.omega.to_string() << "|b:" << cfg.box
       << "|r:" << cfg.rank_max;
    return os.str();
}

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint file " + tmp);
        out << "cyverify-search 1\n";
        out << "fingerprint " << cp.fingerprint << "\n";
        out << "next " << cp.next_index << "\n";
        for (long long i : cp.survivor_indices) out << "survivor " << i << "\n";
        out.flush();
        if (!out) throw std::runtime_error("cannot write checkpoint file " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move checkpoint into place at " + path);
}

std::optional<Checkpoint> load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line != "cyverify-search 1")
        throw std::runtime_error("unrecognized checkpoint format in " + path);
    Checkpoint cp;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto sp = line.find(' ');
        if (sp == std::string::npos)
            throw std::runtime_error("malformed checkpoint line: " + line);
        const std::string head = line.substr(0, sp), rest = line.substr(sp + 1);
        if (head == "fingerprint") {
            cp.fingerprint = rest;
        } else if (head == "next") {
            cp.next_index = std::stoll(rest);
        } else if (head == "survivor") {
            cp.survivor_indices.push_back(std::stoll(rest));
        } else {
            throw std::runtime_error("malformed checkpoint line: " + line);
        }
    }
    return cp;
}

long long enumeration_size(const SearchConfig& cfg) {
    require_valid(cfg);
    Layout l = layout_of(cfg);
    return l.block * l.blocks;
}

Candidate evaluate_candidate(const SearchConfig& cfg, long long index) {
    require_valid(cfg);
    Layout l = layout_of(cfg);
    if (index < 0 || index >= l.block * l.blocks)
        throw std::runtime_error("candidate index out of range");
    Candidate c;
    c.index = index;
    const long long block = index / l.block;
    c.coeffs = decode(l, index % l.block, cfg.box);
    if (block == 0) {
        c.templ = "line-pair";
        evaluate_line_pair(cfg, l, c);
    } else {
        c.templ = block == 1 ? "extension" : "extension-plus-line";
        evaluate_extension(cfg, l, c);
    }
    return c;
}

SearchResult run_search(const SearchConfig& cfg) {
    require_valid(cfg);
    Layout l = layout_of(cfg);
    const long long total = l.block * l.blocks;

    long long start = std::max<long long>(0, cfg.resume_from);
    std::vector<long long> prior;
    if (!cfg.checkpoint.empty()) {
        if (auto cp = load_checkpoint(cfg.checkpoint)) {
            if (cp->fingerprint != config_fingerprint(cfg))
                throw std::runtime_error(
                    "checkpoint belongs to a different search configuration");
            start = std::max(start, cp->next_index);
            prior = cp->survivor_indices;
        }
    }
    start = std::min(start, total);
    const long long cap =
        cfg.limit > 0 ? std::min(total, start + cfg.limit) : total;

    SearchResult res;
    res.total = total;
    res.first_index = start;

    Ledger led(cfg.x, cfg.s);
    for (long long idx : prior) {
        if (idx >= start) continue;
        Candidate c = evaluate_candidate(cfg, idx);
        if (!c.survives) continue;  // a stale entry is dropped rather than trusted
        annotate(led, cfg, l, c);
        res.survivors.push_back(std::move(c));
    }

    const long long chunk = 1024;
    for (long long base = start; base < cap; base += chunk) {
        const long long n = std::min(chunk, cap - base);
        std::vector<Candidate> buf(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) if (cfg.parallel)
        for (long long j = 0; j < n; ++j)
            buf[static_cast<std::size_t>(j)] = evaluate_candidate(cfg, base + j);
        for (auto& c : buf) {
            if (c.survives) {
                annotate(led, cfg, l, c);
                res.survivors.push_back(std::move(c));
            } else {
                ++res.kill_counts[c.screen];
            }
        }
        res.examined += n;
        if (!cfg.checkpoint.empty()) {
            Checkpoint cp;
            cp.fingerprint = config_fingerprint(cfg);
            cp.next_index = base + n;
            for (const auto& s : res.survivors) cp.survivor_indices.push_back(s.index);
            save_checkpoint(cfg.checkpoint, cp);
        }
    }

    res.complete = cap == total;
    for (const auto& s : res.survivors)
        if (s.stable_certified) ++res.certified;
    if (!cfg.checkpoint.empty() && res.examined == 0 && start >= total && total > 0) {
        Checkpoint cp;
        cp.fingerprint = config_fingerprint(cfg);
        cp.next_index = total;
        for (const auto& s : res.survivors) cp.survivor_indices.push_back(s.index);
        save_checkpoint(cfg.checkpoint, cp);
    }
    return res;
}

std::string SearchResult::to_string() const {
    std::ostringstream os;
    os << "examined " << examined << " of " << total << " candidates starting at index "
       << first_index << "\n";
    os << "status: " << (complete ? "complete" : "interrupted") << "\n";
    os << "killed by screen:\n";
    if (kill_counts.empty()) os << "  (none)\n";
    for (const auto& [screen, n] : kill_counts)
        os << "  " << screen << ": " << n << "\n";
    os << "survivors: " << survivors.size() << " (certified stable: " << certified
       << ")\n";
    for (const auto& s : survivors) {
        os << "  [" << s.index << "] " << s.templ << " " << coeff_list(s.coeffs)
           << " class " << s.cls << "\n";
        os << "      " << s.fate << "\n";
    }
    return os.str();
}

}  // namespace cyv
