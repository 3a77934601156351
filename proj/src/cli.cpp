#include "kmc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace kmc {

namespace {

using ojson = nlohmann::ordered_json;

std::string class_name(SystemClass c) {
    switch (c) {
        case SystemClass::Finite: return "finite";
        case SystemClass::Affine: return "affine";
        case SystemClass::Hyperbolic: return "hyperbolic";
        case SystemClass::Indefinite: return "indefinite";
    }
    return "?";
}

IMat parse_matrix_json(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        throw InputError(std::string("matrix JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw InputError("matrix JSON: expected a non-empty array of rows");
    IMat m;
    for (const auto& row : j) {
        if (!row.is_array()) throw InputError("matrix JSON: row " + std::to_string(m.size() + 1) +
                                              " is not an array");
        Vec r;
        for (const auto& e : row) {
            if (!e.is_number_integer())
                throw InputError("matrix JSON: non-integer entry in row " +
                                 std::to_string(m.size() + 1));
            r.push_back(e.get<Coeff>());
        }
        m.push_back(std::move(r));
    }
    return m;
}

IMat parse_matrix_text(const std::string& text) {
    IMat m;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        Vec row;
        Coeff v;
        while (ls >> v) row.push_back(v);
        if (!ls.eof())
            throw InputError("matrix text: line " + std::to_string(lineno) +
                             ": expected whitespace-separated integers");
        if (!row.empty()) m.push_back(std::move(row));
    }
    if (m.empty()) throw InputError("matrix text: no rows found");
    return m;
}

std::string nonspace_prefix(const std::string& s) {
    size_t i = s.find_first_not_of(" \t\r\n");
    return i == std::string::npos ? "" : s.substr(i);
}

ojson mat_json(const IMat& m) {
    ojson j = ojson::array();
    for (const auto& r : m) j.push_back(r);
    return j;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += parts[i];
    }
    return s;
}

std::string vec_tsv(const Vec& v) {
    std::vector<std::string> p;
    for (Coeff e : v) p.push_back(std::to_string(e));
    return join(p, " ");
}

// Display convention: ascending height, then descending lex, which lists the
// simple roots by ascending index.
std::vector<Vec> display_order(std::vector<Vec> roots) {
    std::stable_sort(roots.begin(), roots.end(), [](const Vec& a, const Vec& b) {
        Coeff ha = std::accumulate(a.begin(), a.end(), Coeff(0));
        Coeff hb = std::accumulate(b.begin(), b.end(), Coeff(0));
        if (ha != hb) return ha < hb;
        return a > b;
    });
    return roots;
}

std::string roots_to_string(const std::vector<Vec>& roots) {
    std::vector<std::string> p;
    for (const Vec& r : roots) p.push_back(root_to_string(r));
    return join(p, ", ");
}

std::string cert_description(const NormCertificate& nc) {
    std::string s = "norm " + std::to_string(nc.norm) + ": ";
    switch (nc.method) {
        case NormCertificate::IntegralityGap: return s + "integrality gap";
        case NormCertificate::Factored: return s + "factored enumeration";
        case NormCertificate::Congruence:
            if (!nc.cong) return s + "uncertified";
            return s +
                   (nc.cong->kind == CongruenceCertificate::NoSolutions
                        ? "no solutions mod "
                        : "all residues force a real sum mod ") +
                   std::to_string(nc.cong->modulus);
    }
    return s + "?";
}

// "Empty (mod-4 certificate)"-style qualifier from the per-norm certificates.
std::string empty_qualifier(const std::vector<NormCertificate>& certs) {
    std::set<Coeff> moduli;
    bool all_congruence = true;
    for (const auto& nc : certs) {
        if (nc.method == NormCertificate::Congruence && nc.cong)
            moduli.insert(nc.cong->modulus);
        else
            all_congruence = false;
    }
    if (all_congruence && moduli.size() == 1)
        return "mod-" + std::to_string(*moduli.begin()) + " certificate";
    return "diophantine certificate";
}

Coeff matrix_content_of(const IMat& b) {
    Coeff g = 0;
    for (const auto& r : b)
        for (Coeff e : r) g = std::gcd(g, e < 0 ? -e : e);
    return g == 0 ? 1 : g;
}

struct ZsAnalysis {
    std::string verdict;   // Certified | A1 | Empty | UpToHeight(H) | Inconclusive
    std::string detail;
    std::vector<Vec> members;
    std::vector<Vec> basis;
    long long chambers = 0;
    bool growth_suspected = false;  // new fundamental roots still appearing near the cap
};

ZsAnalysis analyze_zs(const RootSystem& sys, const Vec& alpha, const RunConfig& cfg) {
    ZsAnalysis res;
    bool connected = components(sys.g.a).size() == 1;

    if (connected && sys.cls == SystemClass::Affine) {
        // exact route: the class formula settles the centralizer type fully
        AffineRealization ar = build_affine(sys.g);
        Coeff n = norm2(sys.sym, alpha);
        RootClass cls = RootClass::Any;
        if (ar.tiers.size() >= 2) {
            if (n == ar.tiers.front())
                cls = RootClass::Short;
            else if (n == ar.tiers.back())
                cls = RootClass::Long;
            else
                cls = RootClass::Medium;
        }
        std::string type = affine_centralizer_type(ar, cls);
        Subsystem zs = compute_Zs(sys, alpha, cfg.height_cap);
        res.members = zs.members;
        res.basis = find_basis(zs).roots;
        if (type == "0") {
            res.verdict = "Empty";
            res.detail = "affine class formula";
        } else {
            res.verdict = "Certified";
            res.detail = "affine centralizer type " + type;
        }
        return res;
    }

    Subsystem zs = compute_Zs(sys, alpha, cfg.height_cap);
    res.members = zs.members;

    if (connected && sys.g.rank == 3) {
        SmallCentralizerResult sc = certify_small_centralizer(sys, alpha);
        std::vector<std::string> descs;
        for (const auto& nc : sc.certs) descs.push_back(cert_description(nc));
        res.basis = sc.roots;
        switch (sc.kind) {
            case SmallCentralizerResult::Empty:
                res.verdict = "Empty";
                res.detail = empty_qualifier(sc.certs) + "; " + join(descs, "; ");
                break;
            case SmallCentralizerResult::A1:
                res.verdict = "A1";
                res.detail = join(descs, "; ");
                break;
            case SmallCentralizerResult::TwoRoots:
                res.verdict = "Certified";
                res.detail = "rank-3 ceiling: at most two weakly independent roots";
                break;
            case SmallCentralizerResult::Undecided:
                res.verdict = "Inconclusive";
                res.detail = join(descs, "; ");
                break;
        }
        return res;
    }

    if (zs.members.empty()) {
        // modular emptiness certificates, one per candidate norm class
        Coeff gB = matrix_content_of(sys.sym.b);
        std::set<Coeff> norms;
        for (int i = 0; i < sys.g.rank; ++i) norms.insert(sys.sym.b[i][i] / gB);
        std::vector<NormCertificate> certs;
        bool all_certified = true;
        for (Coeff t : norms) {
            NormCertificate nc;
            nc.norm = t;
            bool certified = false;
            for (Coeff m : cfg.moduli) {
                if (auto c = congruence_scan(sys, alpha, t, m)) {
                    nc.cong = c;
                    certified = true;
                    break;
                }
            }
            if (!certified) all_certified = false;
            certs.push_back(std::move(nc));
        }
        std::vector<std::string> descs;
        for (const auto& nc : certs) descs.push_back(cert_description(nc));
        if (all_certified) {
            res.verdict = "Empty";
            res.detail = empty_qualifier(certs) + "; " + join(descs, "; ");
        } else {
            res.verdict = "UpToHeight(" + std::to_string(cfg.height_cap) + ")";
            res.detail = "no members found below the cap; " + join(descs, "; ");
        }
        return res;
    }

    BasisCandidate bc = find_basis(zs);
    res.basis = bc.roots;
    CertificationResult cert = certify_basis(sys, zs, bc, cfg.chamber_budget);
    res.chambers = cert.chambers_explored;
    if (cert.verdict == Verdict::Certified) {
        res.verdict = "Certified";
        res.detail = "chamber-reflection certificate (" +
                     std::to_string(cert.chambers_explored) + " chambers)";
        return res;
    }
    if (cert.verdict == Verdict::CutBy) {
        res.verdict = "UpToHeight(" + std::to_string(cfg.height_cap) + ")";
        res.detail = "candidate cut by member " + root_to_string(cert.cutting_root);
        return res;
    }
    Coeff max_h = 0;
    for (const Vec& r : bc.roots)
        max_h = std::max(max_h, std::accumulate(r.begin(), r.end(), Coeff(0)));
    res.growth_suspected = 4 * max_h >= cfg.height_cap;
    res.verdict = "UpToHeight(" + std::to_string(cfg.height_cap) + ")";
    res.detail = "chamber budget exhausted (" + std::to_string(cert.chambers_explored) +
                 " chambers)";
    if (res.growth_suspected)
        res.detail += "; new fundamental roots still appearing near the cap";
    return res;
}

ojson zs_report_json(const RootSystem& sys, const Vec& alpha, const RunConfig& cfg,
                     const ZsAnalysis& an, bool include_members) {
    ojson rep;
    rep["rank"] = sys.g.rank;
    rep["class"] = class_name(sys.cls);
    rep["alpha"] = alpha;
    rep["alpha_rendered"] = root_to_string(alpha);
    rep["cap"] = cfg.height_cap;
    rep["budget"] = cfg.chamber_budget;
    rep["member_count"] = an.members.size();
    if (include_members) {
        constexpr size_t kMaxListed = 200;
        ojson mem = ojson::array();
        for (size_t i = 0; i < an.members.size() && i < kMaxListed; ++i)
            mem.push_back(an.members[i]);
        rep["members"] = std::move(mem);
        rep["members_truncated"] = an.members.size() > kMaxListed;
    }
    rep["basis"] = mat_json(an.basis);
    std::string rendered = roots_to_string(display_order(an.basis));
    rep["basis_rendered"] = rendered;
    rep["verdict"] = an.verdict;
    rep["detail"] = an.detail;
    rep["summary"] = an.verdict == "Empty"
                         ? "Empty (" + an.detail.substr(0, an.detail.find(';')) + ")"
                         : an.verdict + (rendered.empty() ? "" : "; basis: " + rendered);
    return rep;
}

std::string tsv_of(const ojson& rep) {
    std::string out;
    for (const auto& [k, v] : rep.items()) {
        out += k;
        out += '\t';
        if (v.is_string())
            out += v.get<std::string>();
        else
            out += v.dump();
        out += '\n';
    }
    return out;
}

std::string emit(const ojson& rep, OutputFormat f) {
    if (f == OutputFormat::Json) return rep.dump(2) + "\n";
    return tsv_of(rep);
}

// ----- affine table ---------------------------------------------------------

struct TableSpec {
    Gcm g;
    std::vector<std::pair<RootClass, std::string>> rows;  // class -> expected type
};

const char* root_class_name(RootClass c) {
    switch (c) {
        case RootClass::Long: return "long";
        case RootClass::Medium: return "medium";
        case RootClass::Short: return "short";
        case RootClass::Any: return "any";
    }
    return "?";
}

// Every affine family instantiated at its two smallest legal ranks (the
// one-rank families F_4^(1), G_2^(1), E_6^(2), D_4^(3) once), one row per
// root-length class.
std::vector<TableSpec> affine_table_specs() {
    using RC = RootClass;
    std::vector<TableSpec> t;
    t.push_back({affine_gcm_untwisted('A', 2), {{RC::Any, "0"}}});
    t.push_back({affine_gcm_untwisted('A', 3), {{RC::Any, "A_1^(1)"}}});
    t.push_back({affine_gcm_untwisted('B', 3), {{RC::Long, "2A_1^(1)"}, {RC::Short, "2A_1^(1)"}}});
    t.push_back(
        {affine_gcm_untwisted('B', 4), {{RC::Long, "A_1^(1)+C_2^(1)"}, {RC::Short, "A_3^(1)"}}});
    t.push_back({affine_gcm_untwisted('C', 2), {{RC::Long, "A_1^(1)"}, {RC::Short, "0"}}});
    t.push_back({affine_gcm_untwisted('C', 3), {{RC::Long, "C_2^(1)"}, {RC::Short, "A_1^(1)"}}});
    t.push_back({affine_gcm_untwisted('D', 4), {{RC::Any, "3A_1^(1)"}}});
    t.push_back({affine_gcm_untwisted('D', 5), {{RC::Any, "A_1^(1)+A_3^(1)"}}});
    t.push_back({affine_gcm_untwisted('E', 6), {{RC::Any, "A_5^(1)"}}});
    t.push_back({affine_gcm_untwisted('E', 7), {{RC::Any, "D_6^(1)"}}});
    t.push_back({affine_gcm_untwisted('F', 4), {{RC::Long, "C_3^(1)"}, {RC::Short, "A_3^(1)"}}});
    t.push_back({affine_gcm_untwisted('G', 2), {{RC::Long, "A_1^(1)"}, {RC::Short, "A_1^(1)"}}});
    t.push_back({affine_gcm_twisted("a2even", 1), {{RC::Long, "0"}, {RC::Short, "0"}}});
    t.push_back({affine_gcm_twisted("a2even", 2),
                 {{RC::Long, "A_2^(2)"}, {RC::Medium, "A_1^(1)"}, {RC::Short, "A_1^(1)"}}});
    t.push_back({affine_gcm_twisted("a2odd", 2), {{RC::Long, "A_1^(1)"}, {RC::Short, "A_1^(1)"}}});
    t.push_back(
        {affine_gcm_twisted("a2odd", 3), {{RC::Long, "A_3^(2)"}, {RC::Short, "2A_1^(1)"}}});
    t.push_back({affine_gcm_twisted("d2", 2), {{RC::Long, "A_1^(1)"}, {RC::Short, "A_1^(1)"}}});
    t.push_back({affine_gcm_twisted("d2", 3), {{RC::Long, "2A_1^(1)"}, {RC::Short, "C_2^(1)"}}});
    t.push_back({affine_gcm_twisted("e62", 6), {{RC::Long, "A_5^(2)"}, {RC::Short, "B_3^(1)"}}});
    t.push_back({affine_gcm_twisted("d43", 4), {{RC::Long, "A_1^(1)"}, {RC::Short, "A_1^(1)"}}});
    return t;
}

// ----- atlas ----------------------------------------------------------------

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

// Simple roots merged by Weyl conjugacy (transitive closure of single bonds)
// and by diagram automorphism; groups ordered by smallest index.
std::vector<std::vector<int>> simple_root_orbits(const Gcm& g) {
    UnionFind uf(g.rank);
    for (int i = 0; i < g.rank; ++i)
        for (int j = i + 1; j < g.rank; ++j)
            if (g.a[i][j] == -1 && g.a[j][i] == -1) uf.unite(i, j);
    for (const auto& p : diagram_automorphisms(g.a))
        for (int i = 0; i < g.rank; ++i) uf.unite(i, p[i]);
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < g.rank; ++i) groups[uf.find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

// Representative maximizing the number of simple roots inside Z_s, breaking
// ties by the size of the automorphism stabilizer, then by smallest index.
int pick_representative(const RootSystem& sys, const std::vector<int>& orbit) {
    auto autos = diagram_automorphisms(sys.g.a);
    int best = orbit.front();
    long long best_count = -1, best_stab = -1;
    for (int i : orbit) {
        Vec alpha(sys.g.rank, 0);
        alpha[i] = 1;
        long long count = 0;
        for (int j = 0; j < sys.g.rank; ++j) {
            if (j == i) continue;
            Vec beta(sys.g.rank, 0);
            beta[j] = 1;
            if (is_strictly_orthogonal(sys, alpha, beta)) ++count;
        }
        long long stab = 0;
        for (const auto& p : autos)
            if (p[i] == i) ++stab;
        if (count > best_count || (count == best_count && stab > best_stab)) {
            best = i;
            best_count = count;
            best_stab = stab;
        }
    }
    return best;
}

ojson atlas_record(const RootSystem& sys, int sys_index, const std::vector<int>& orbit,
                   const RunConfig& cfg) {
    ojson rec;
    rec["system"] = sys_index;
    rec["rank"] = sys.g.rank;
    rec["gcm"] = mat_json(sys.g.a);
    ojson orb = ojson::array();
    for (int i : orbit) orb.push_back(i + 1);
    rec["orbit"] = std::move(orb);
    int rep = pick_representative(sys, orbit);
    rec["alpha_index"] = rep + 1;
    Vec alpha(sys.g.rank, 0);
    alpha[rep] = 1;
    rec["cap"] = cfg.height_cap;
    rec["budget"] = cfg.chamber_budget;
    try {
        ZsAnalysis an = analyze_zs(sys, alpha, cfg);
        rec["member_count"] = an.members.size();
        rec["basis"] = mat_json(an.basis);
        rec["basis_rendered"] = roots_to_string(display_order(an.basis));
        rec["verdict"] = an.growth_suspected
                             ? "infinite-rank suspected (cap " +
                                   std::to_string(cfg.height_cap) + ")"
                             : an.verdict;
        rec["detail"] = an.detail;
    } catch (const KmcError& e) {
        rec["error"] = e.what();
    }
    return rec;
}

int default_workers() {
    if (const char* env = std::getenv("KMC_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return std::clamp<int>(static_cast<int>(hc), 1, 8);
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "tsv") return OutputFormat::Tsv;
    if (name == "dot") return OutputFormat::Dot;
    throw InputError("unknown format '" + name + "' (expected json, tsv or dot)");
}

void RunConfig::validate() const {
    if (height_cap <= 0) throw InputError("height cap must be positive");
    if (chamber_budget <= 0) throw InputError("chamber budget must be positive");
    for (Coeff m : moduli)
        if (m <= 1) throw InputError("moduli must exceed 1");
}

Gcm parse_gcm_input(const std::string& input) {
    std::string text = input;
    if (nonspace_prefix(input).rfind('[', 0) != 0) {
        std::ifstream f(input);
        if (!f) throw InputError("cannot open input file '" + input + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    IMat m = nonspace_prefix(text).rfind('[', 0) == 0 ? parse_matrix_json(text)
                                                      : parse_matrix_text(text);
    size_t n = m.size();
    for (const auto& r : m)
        if (r.size() != n) throw InputError("matrix is not square");
    return validate_gcm(m);
}

Vec parse_alpha(const RootSystem& sys, const std::string& spec) {
    if (spec.empty()) throw InputError("empty --alpha argument");
    Vec alpha;
    if (spec.find(',') == std::string::npos) {
        size_t pos = 0;
        long long idx;
        try {
            idx = std::stoll(spec, &pos);
        } catch (const std::exception&) {
            throw InputError("--alpha: expected an index or a comma-separated vector");
        }
        if (pos != spec.size()) throw InputError("--alpha: trailing characters after index");
        if (idx < 1 || idx > sys.g.rank)
            throw InputError("--alpha index out of range 1.." + std::to_string(sys.g.rank));
        alpha.assign(sys.g.rank, 0);
        alpha[idx - 1] = 1;
    } else {
        std::istringstream is(spec);
        std::string part;
        while (std::getline(is, part, ',')) {
            try {
                alpha.push_back(std::stoll(part));
            } catch (const std::exception&) {
                throw InputError("--alpha: bad vector entry '" + part + "'");
            }
        }
        if (static_cast<int>(alpha.size()) != sys.g.rank)
            throw InputError("--alpha vector length must equal the rank " +
                             std::to_string(sys.g.rank));
        if (!is_real_root(sys, alpha)) throw NotRealRoot("--alpha is not a real root");
    }
    return alpha;
}

std::string root_to_string(const Vec& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (!s.empty()) s += v[i] > 0 ? "+" : "-";
        else if (v[i] < 0) s += "-";
        Coeff c = v[i] > 0 ? v[i] : -v[i];
        if (c != 1) s += std::to_string(c);
        s += "α_" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
}

CommandResult run_classify(const std::string& input, const RunConfig& cfg) {
    if (cfg.format == OutputFormat::Dot)
        throw InputError("classify supports formats json and tsv");
    Gcm g = parse_gcm_input(input);
    RootSystem sys = make_system(g);
    auto comps = components(g.a);
    std::string name;
    if (comps.size() == 1) {
        name = classify(g).name;
    } else {
        try {
            name = identify_diagram(g);
        } catch (const KmcError&) {
            name = "";
        }
    }
    ojson rep;
    rep["rank"] = g.rank;
    rep["class"] = class_name(sys.cls);
    rep["name"] = name;
    ojson cc = ojson::array();
    for (SystemClass c : sys.component_classes) cc.push_back(class_name(c));
    rep["component_classes"] = std::move(cc);
    rep["symmetrization"] = {{"d", sys.sym.d}, {"b", mat_json(sys.sym.b)}};
    rep["summary"] = class_name(sys.cls) + (name.empty() ? "" : " " + name);
    return {0, emit(rep, cfg.format)};
}

CommandResult run_zs(const std::string& input, const std::string& alpha_spec,
                     const RunConfig& cfg) {
    if (cfg.format == OutputFormat::Dot) throw InputError("zs supports formats json and tsv");
    cfg.validate();
    Gcm g = parse_gcm_input(input);
    RootSystem sys = make_system(g);
    Vec alpha = parse_alpha(sys, alpha_spec);
    ZsAnalysis an = analyze_zs(sys, alpha, cfg);
    ojson rep = zs_report_json(sys, alpha, cfg, an, true);
    return {0, emit(rep, cfg.format)};
}

CommandResult run_affine_table(const RunConfig& cfg) {
    if (cfg.format == OutputFormat::Dot)
        throw InputError("affine-table supports formats json and tsv");
    bool all_match = true;
    ojson rows = ojson::array();
    std::string tsv = "system\tclass\tcomputed\texpected\tmatch\n";
    for (const TableSpec& spec : affine_table_specs()) {
        AffineRealization ar = build_affine(spec.g);
        for (const auto& [cls, expected] : spec.rows) {
            std::string computed = affine_centralizer_type(ar, cls);
            bool match = computed == expected;
            all_match = all_match && match;
            ojson row;
            row["system"] = ar.name;
            row["class"] = root_class_name(cls);
            row["computed"] = computed;
            row["expected"] = expected;
            row["match"] = match;
            rows.push_back(std::move(row));
            tsv += ar.name;
            tsv += '\t';
            tsv += root_class_name(cls);
            tsv += '\t';
            tsv += computed + '\t' + expected + '\t' + (match ? "yes" : "no") + '\n';
        }
    }
    int code = all_match ? 0 : 1;
    if (cfg.format == OutputFormat::Tsv) return {code, tsv};
    ojson rep;
    rep["rows"] = std::move(rows);
    rep["all_match"] = all_match;
    return {code, rep.dump(2) + "\n"};
}

CommandResult run_render(const std::string& input) {
    Gcm g = parse_gcm_input(input);
    return {0, to_dot(g)};
}

CommandResult run_atlas(int rank_min, int rank_max, const RunConfig& cfg,
                        const std::string& resume_dir, int workers) {
    if (cfg.format == OutputFormat::Dot) throw InputError("atlas supports formats json and tsv");
    cfg.validate();
    if (rank_min < 3 || rank_max > 10 || rank_min > rank_max)
        throw InputError("rank range must satisfy 3 <= min <= max <= 10");
    if (workers <= 0) workers = default_workers();

    std::vector<Gcm> catalog = enumerate_hyperbolic_catalog(rank_min, rank_max, true);
    if (!resume_dir.empty()) std::filesystem::create_directories(resume_dir);

    std::vector<std::vector<ojson>> per_system(catalog.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < catalog.size(); i = next.fetch_add(1)) {
            RootSystem sys = make_system(catalog[i]);
            auto orbits = simple_root_orbits(catalog[i]);
            for (size_t k = 0; k < orbits.size(); ++k) {
                std::filesystem::path cache;
                if (!resume_dir.empty()) {
                    char buf[48];
                    std::snprintf(buf, sizeof buf, "sys%04zu_orbit%zu.json", i, k);
                    cache = std::filesystem::path(resume_dir) / buf;
                    std::ifstream f(cache);
                    if (f) {
                        try {
                            per_system[i].push_back(ojson::parse(f));
                            continue;
                        } catch (const ojson::parse_error&) {
                            // unreadable cache entry: recompute below
                        }
                    }
                }
                ojson rec = atlas_record(sys, static_cast<int>(i), orbits[k], cfg);
                if (!cache.empty()) {
                    std::ofstream out(cache);
                    out << rec.dump(2) << "\n";
                }
                per_system[i].push_back(std::move(rec));
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    if (cfg.format == OutputFormat::Tsv) {
        std::string tsv = "system\trank\torbit\talpha_index\tverdict\tmembers\tbasis_size\n";
        for (const auto& recs : per_system)
            for (const ojson& r : recs) {
                std::vector<std::string> orb;
                for (const auto& x : r["orbit"]) orb.push_back(std::to_string(x.get<int>()));
                tsv += std::to_string(r["system"].get<int>()) + '\t' +
                       std::to_string(r["rank"].get<int>()) + '\t' + join(orb, ",") + '\t' +
                       std::to_string(r["alpha_index"].get<int>()) + '\t';
                if (r.contains("error"))
                    tsv += "error\t0\t0\n";
                else
                    tsv += r["verdict"].get<std::string>() + '\t' +
                           std::to_string(r["member_count"].get<size_t>()) + '\t' +
                           std::to_string(r["basis"].size()) + '\n';
            }
        return {0, tsv};
    }
    ojson all = ojson::array();
    for (auto& recs : per_system)
        for (auto& r : recs) all.push_back(std::move(r));
    return {0, all.dump(2) + "\n"};
}

}  // namespace kmc
