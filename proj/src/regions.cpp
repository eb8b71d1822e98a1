#include "lvbif/regions.hpp"

#include "lvbif/errors.hpp"
#include "lvbif/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace lvbif {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int sgn(double x) { return x > 0.0 ? 1 : -1; }

void require_nonzero(double v, const std::string& what) {
    if (!(std::abs(v) > zero_tol)) throw UnsupportedCase("case selection requires " + what + " != 0");
}

std::string roman(int signs_index) {
    static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};
    return names[signs_index];
}

// Degenerate-class label from (s0, s1, s2, s3); empty if the pattern is not listed.
std::string degenerate_label(const std::vector<int>& s) {
    if (s[1] < 0) return s[0] > 0 ? roman(6) : roman(7);
    const int base = s[0] > 0 ? 0 : 3;
    if (s[2] > 0 && s[3] < 0) return roman(base);
    if (s[2] > 0 && s[3] > 0) return roman(base + 1);
    if (s[2] < 0 && s[3] < 0) return roman(base + 2);
    return "";
}

} // namespace

std::string CaseDescriptor::sign_string() const {
    std::string out;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (i) out += ',';
        out += signs[i] > 0 ? '+' : '-';
    }
    return out;
}

CaseDescriptor select_case(const ReducedSystem& sys) {
    CaseDescriptor c;
    c.degeneracy = sys.degeneracy;
    const CoeffValues v = sys.at_origin();
    const double g = v.gamma;
    switch (sys.degeneracy) {
    case Degeneracy::DoublyDegenerate:
        throw UnsupportedCase("theta(0) = delta(0) = 0: the doubly degenerate class is not covered");
    case Degeneracy::NonDegenerate: {
        const double q = v.theta * v.delta - 1.0;
        if (!(std::abs(q) > 1e-9)) throw UnsupportedCase("case selection requires theta*delta - 1 != 0");
        c.signs = {sgn(v.theta), sgn(v.delta), sgn(q)};
        c.label = "(" + c.sign_string() + ")";
        c.hypotheses = {"gamma>0", "theta*delta!=0", "theta*delta-1!=0"};
        break;
    }
    case Degeneracy::DeltaZero: {
        const double d1 = sys.delta.d_mu1();
        require_nonzero(d1, "delta1");
        require_nonzero(v.P, "P");
        require_nonzero(g * d1 - v.P, "gamma*delta1 - P");
        require_nonzero(g * d1 - 2.0 * v.P, "gamma*delta1 - 2P");
        c.signs = {sgn(v.theta), sgn(d1), sgn(g * d1 - v.P), sgn(g * d1 - 2.0 * v.P)};
        c.hypotheses = {"gamma>0", "theta!=0", "delta1!=0", "P>0"};
        if (v.P < 0.0) {
            c.table_supported = false;
            c.notes.push_back("table verification limited to P>0");
        }
        c.label = degenerate_label(c.signs);
        break;
    }
    case Degeneracy::ThetaZero: {
        const double t2 = sys.theta.d_mu2();
        require_nonzero(t2, "theta2");
        require_nonzero(v.N, "N");
        require_nonzero(t2 - v.N * g, "theta2 - N*gamma");
        require_nonzero(t2 - 2.0 * v.N * g, "theta2 - 2N*gamma");
        c.signs = {sgn(v.delta), sgn(t2), sgn(t2 - v.N * g), sgn(t2 - 2.0 * v.N * g)};
        c.hypotheses = {"gamma>0", "delta!=0", "theta2!=0", "N>0"};
        if (v.N < 0.0) {
            c.table_supported = false;
            c.notes.push_back("table verification limited to N>0");
        }
        c.label = degenerate_label(c.signs);
        break;
    }
    }
    if (c.label.empty()) {
        c.label = "(" + c.sign_string() + ")";
        c.table_supported = false;
        c.notes.push_back("sign pattern outside the tabulated case list");
    }
    return c;
}

const std::vector<Label>& row_labels(Degeneracy d) {
    static const std::vector<Label> nondeg{Label::E0, Label::E1, Label::E2, Label::E3};
    static const std::vector<Label> dz{Label::E0, Label::E1, Label::E21, Label::E22, Label::E3};
    static const std::vector<Label> tz{Label::E0, Label::E11, Label::E12, Label::E2, Label::E3};
    static const std::vector<Label> dd{Label::E0, Label::E11, Label::E12, Label::E21, Label::E22, Label::E3};
    switch (d) {
    case Degeneracy::NonDegenerate: return nondeg;
    case Degeneracy::DeltaZero: return dz;
    case Degeneracy::ThetaZero: return tz;
    case Degeneracy::DoublyDegenerate: return dd;
    }
    return nondeg;
}

std::string signature_of(const EquilibriumSet& eqs, Degeneracy d) {
    std::string sig;
    for (Label l : row_labels(d)) {
        const Equilibrium* e = eqs.find(l);
        sig += (e && e->proper && !e->trivial) ? type_letter(e->kind) : '-';
    }
    return sig;
}

std::string signature_at(const ReducedSystem& sys, const ParamPoint& mu) {
    return signature_of(find_equilibria(sys, mu), sys.degeneracy);
}

Decomposition decompose(const ReducedSystem& sys, const CaseDescriptor& c, double r) {
    (void)c;
    Decomposition out;
    for (double radius = r;; radius *= 0.1) {
        out = Decomposition{};
        out.radius = radius;
        std::vector<BoundaryAngle> traced;
        for (CurveKind k : admissible_kinds(sys.degeneracy)) {
            if (k == CurveKind::H) continue;
            try {
                const CurveSample s = solve_on_circle(sys, k, radius);
                traced.push_back({s.angle, k});
            } catch (const NoRoot& e) {
                out.notes.push_back(e.what());
            } catch (const ConstraintViolation& e) {
                out.notes.push_back(e.what());
            }
        }
        std::sort(traced.begin(), traced.end(),
                  [](const BoundaryAngle& a, const BoundaryAngle& b) { return a.angle < b.angle; });
        const double sep = sep_tol_factor * radius;
        double min_gap = two_pi;
        for (std::size_t i = 0; i < traced.size(); ++i) {
            const double next = i + 1 < traced.size() ? traced[i + 1].angle : traced[0].angle + two_pi;
            min_gap = std::min(min_gap, next - traced[i].angle);
        }
        if (min_gap < 10.0 * sep) {
            if (radius * 0.1 < 1e-6) throw SectorTooThin("bifurcation curves are not separated at any radius");
            continue;
        }

        // Candidate sectors between consecutive traced angles.
        const std::size_t n = traced.size();
        std::vector<RegionReport> cand(n);
        for (std::size_t i = 0; i < n; ++i) {
            cand[i].angle_lo = traced[i].angle;
            cand[i].angle_hi = i + 1 < n ? traced[i + 1].angle : traced[0].angle + two_pi;
            cand[i].lo_curve = traced[i].kind;
            cand[i].hi_curve = traced[(i + 1) % n].kind;
            const double mid = 0.5 * (cand[i].angle_lo + cand[i].angle_hi);
            cand[i].representative = {radius * std::cos(mid), radius * std::sin(mid)};
        }
        const auto sigs = parallel_map(n, [&](std::size_t i) { return signature_at(sys, cand[i].representative); });
        for (std::size_t i = 0; i < n; ++i) cand[i].signature = sigs[i];

        // A traced angle is a boundary only if the signature changes across it.
        std::vector<bool> active(n);
        for (std::size_t i = 0; i < n; ++i) active[i] = cand[(i + n - 1) % n].signature != cand[i].signature;
        for (std::size_t i = 0; i < n; ++i) (active[i] ? out.boundaries : out.passive).push_back(traced[i]);
        if (out.boundaries.empty()) {
            RegionReport whole = cand[0];
            whole.angle_lo = 0.0;
            whole.angle_hi = two_pi;
            out.sectors.push_back(whole);
            return out;
        }
        // Start from the first active boundary at or after angle 0.
        std::size_t start = 0;
        while (!active[start]) ++start;
        for (std::size_t k = 0; k < n;) {
            const std::size_t i = (start + k) % n;
            RegionReport merged = cand[i];
            double widest = cand[i].angle_hi - cand[i].angle_lo;
            std::size_t j = k + 1;
            while (j < n && !active[(start + j) % n]) {
                const RegionReport& nx = cand[(start + j) % n];
                const double w = nx.angle_hi - nx.angle_lo;
                if (w > widest) {
                    widest = w;
                    merged.representative = nx.representative;
                }
                merged.hi_curve = nx.hi_curve;
                ++j;
            }
            const RegionReport& last = cand[(start + j - 1) % n];
            merged.angle_hi = last.angle_hi + (((start + j - 1) % n) < i ? two_pi : 0.0);
            if (merged.angle_lo >= two_pi) {
                merged.angle_lo -= two_pi;
                merged.angle_hi -= two_pi;
            }
            merged.sector_id = static_cast<int>(out.sectors.size());
            out.sectors.push_back(merged);
            k = j;
        }
        return out;
    }
}

const std::vector<std::string>& reference_table(Degeneracy d) {
    auto columns = [](std::vector<std::string> rows) {
        std::vector<std::string> cols(rows[0].size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& row : rows) cols[j] += row.at(j);
        return cols;
    };
    // Rows follow row_labels(d); one column per region.
    static const std::vector<std::string> nondeg = columns({
        "rsaaasarssaasrssassrssassraass",
        "-rrss-r-rrrs-s---ass---ass--as",
        "--ssrrrssa---ssa---ssa----srrr",
        "---r--s--ss----sss-aa---a--ss-",
    });
    static const std::vector<std::string> dz = columns({
        "rsssaassarsssasssarr",
        "-rrrrs-rrs----as---s",
        "--srrrrrs--srrrrrsrr",
        "--aa---s---aa---s-ss",
        "---ss-------sss-----",
    });
    static const std::vector<std::string> tz = columns({
        "rsaassssaarssassssrr",
        "-rrrrs-rss-rrrrs-rrr",
        "----aa-s------aa-sss",
        "--srrrrrr-ssa------s",
        "---ss-------sss-----",
    });
    static const std::vector<std::string> none;
    switch (d) {
    case Degeneracy::NonDegenerate: return nondeg;
    case Degeneracy::DeltaZero: return dz;
    case Degeneracy::ThetaZero: return tz;
    case Degeneracy::DoublyDegenerate: return none;
    }
    return none;
}

std::size_t expected_region_count(Degeneracy d) { return reference_table(d).size(); }

bool VerificationReport::success() const {
    for (const auto& d : diagrams)
        if (!d.case_match || !d.error.empty()) return false;
    return unmatched_computed.empty() && unmatched_table.empty() && total_regions == expected_total;
}

VerificationReport verify_tables(Degeneracy family, const std::vector<Fixture>& fixtures, double r) {
    if (family == Degeneracy::DoublyDegenerate)
        throw UnsupportedCase("the doubly degenerate class has no reference table");
    VerificationReport rep;
    rep.family = family;
    rep.radius = r;
    rep.expected_total = expected_region_count(family);
    rep.diagrams = parallel_map(fixtures.size(), [&](std::size_t i) {
        const Fixture& f = fixtures[i];
        DiagramReport d;
        d.fixture = f.name;
        d.declared_signs = f.declared_signs;
        try {
            if (f.sys.degeneracy != family)
                throw UnsupportedCase("fixture class " + to_string(f.sys.degeneracy) + " differs from the family");
            const CaseDescriptor c = select_case(f.sys);
            d.computed_signs = c.sign_string();
            d.case_label = c.label;
            d.case_match = d.computed_signs == f.declared_signs;
            d.decomposition = decompose(f.sys, c, r);
        } catch (const Error& e) {
            d.error = e.what();
        }
        return d;
    });

    std::set<std::string> computed;
    std::map<std::string, std::set<std::string>> where;
    for (const auto& d : rep.diagrams)
        for (const auto& s : d.decomposition.sectors) {
            computed.insert(s.signature);
            where[s.signature].insert(d.fixture);
        }
    const auto& table = reference_table(family);
    const std::set<std::string> expected(table.begin(), table.end());
    rep.computed.assign(computed.begin(), computed.end());
    for (const auto& s : computed) (expected.count(s) ? rep.matched : rep.unmatched_computed).push_back(s);
    for (const auto& s : expected)
        if (!computed.count(s)) rep.unmatched_table.push_back(s);
    for (const auto& [sig, names] : where)
        if (names.size() > 1) rep.shared[sig] = std::vector<std::string>(names.begin(), names.end());
    rep.total_regions = computed.size();
    return rep;
}

RegionReport region_membership(const ReducedSystem& sys, const ParamPoint& mu) {
    const double r = mu.norm();
    if (r == 0.0) throw OnCurve("mu = 0 lies on every bifurcation curve");
    const CaseDescriptor c = select_case(sys);
    const Decomposition dec = decompose(sys, c, r);
    if (dec.radius != r) throw SectorTooThin("sectors at |mu| are too thin to resolve");
    double phi = std::atan2(mu.mu2, mu.mu1);
    if (phi < 0.0) phi += two_pi;
    const double sep = sep_tol_factor * r;
    for (const auto& b : dec.boundaries) {
        double d = std::abs(phi - b.angle);
        d = std::min(d, two_pi - d);
        if (d < sep) throw OnCurve("mu lies on " + to_string(b.kind) + " within the angular separation");
    }
    for (const auto& s : dec.sectors) {
        const bool inside = (phi > s.angle_lo && phi < s.angle_hi) || (phi + two_pi > s.angle_lo && phi + two_pi < s.angle_hi);
        if (inside) {
            RegionReport out = s;
            out.representative = mu;
            out.signature = signature_at(sys, mu);
            return out;
        }
    }
    throw OnCurve("mu is not inside any sector");
}

} // namespace lvbif
