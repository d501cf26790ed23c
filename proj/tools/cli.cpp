#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>

#include "supertrace/identities.hpp"
#include "supertrace/qindex.hpp"
#include "supertrace/symfun.hpp"

namespace supertrace::cli {

using nlohmann::json;
namespace ft = supertrace::freetrace;
namespace id = supertrace::identities;
namespace qi = supertrace::qindex;
namespace sf = supertrace::symfun;

namespace {

struct Options {
    std::string format = "text";
    bool force = false;
    unsigned threads = 1;
    bool json() const { return format == "json"; }
};

// compact word rendering with powers: x1^5 x2
std::string compact_word(const ft::Word& w) {
    std::string s;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!s.empty()) s += ' ';
        s += ft::to_string(w[i]);
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

std::string compact_term(const ft::TraceTerm& term, const Rational& coeff) {
    std::string s;
    if (coeff != 1 || (term.factors.empty() && term.outer.empty())) s = coeff.get_str();
    for (auto& f : term.factors) {
        if (!s.empty()) s += " ";
        s += "t(" + compact_word(f) + ")";
    }
    if (!term.outer.empty()) {
        if (!s.empty()) s += " ";
        s += compact_word(term.outer);
    }
    return s;
}

std::string compact_expr(const ft::TraceExpression& expr) {
    if (expr.is_zero()) return "0";
    std::string s;
    for (auto& [term, coeff] : expr.terms()) {
        Rational a = coeff > 0 ? coeff : Rational(-coeff);
        if (s.empty()) {
            if (coeff < 0) s += "- ";
        } else {
            s += coeff < 0 ? " - " : " + ";
        }
        s += compact_term(term, a);
    }
    return s;
}

json word_json(const ft::Word& w) {
    json arr = json::array();
    for (auto& l : w) arr.push_back(ft::to_string(l));
    return arr;
}

json expr_json(const ft::TraceExpression& expr) {
    json terms = json::array();
    for (auto& [term, coeff] : expr.terms()) {
        json t;
        t["coeff"] = coeff.get_str();
        json traces = json::array();
        for (auto& f : term.factors) traces.push_back(word_json(f));
        t["traces"] = traces;
        t["outer"] = word_json(term.outer);
        terms.push_back(t);
    }
    return terms;
}

ft::TraceExpression expr_from_json(const json& terms) {
    ft::TraceExpression expr;
    for (auto& t : terms) {
        std::vector<ft::Word> factors;
        for (auto& f : t.at("traces")) {
            ft::Word w;
            for (auto& l : f) w.push_back(ft::letter_from_string(l.get<std::string>()));
            factors.push_back(w);
        }
        ft::Word outer;
        for (auto& l : t.at("outer")) outer.push_back(ft::letter_from_string(l.get<std::string>()));
        expr += ft::TraceExpression::term(factors, outer,
                                          rational_from_string(t.at("coeff").get<std::string>()));
    }
    return expr;
}

json identity_json(int e, int f, int n, const std::string& kind) {
    return json{{"e", e}, {"f", f}, {"n", n}, {"kind", kind}};
}

int cmd_identity_gen(const Options& opt, int n, int e, int f, const std::string& kind,
                     std::ostream& out) {
    ft::TraceExpression expr = kind == "CH" ? id::gen_CH(e, f, n) : id::gen_T(e, f, n);
    if (opt.json()) {
        json j;
        j["identity"] = identity_json(e, f, n, kind);
        j["terms"] = expr_json(expr);
        out << j.dump() << "\n";
    } else {
        out << kind << "(e=" << e << ",f=" << f << ",n=" << n << ") = " << compact_expr(expr)
            << "\n";
    }
    return 0;
}

int cmd_identity_verify(const Options& opt, int n, int e, int f, const std::string& kind, int size,
                        std::ostream& out) {
    std::vector<std::string> kinds;
    if (kind == "both") {
        kinds = {"T", "CH"};
    } else {
        kinds = {kind};
    }
    bool all_zero = true;
    json results = json::array();
    for (auto& k : kinds) {
        id::IdentitySpec spec{n, e, f,
                              k == "CH" ? id::IdentitySpec::Kind::CH : id::IdentitySpec::Kind::T};
        auto verdict = id::verify_identity(spec, size > 0 ? std::optional<int>(size) : std::nullopt);
        all_zero = all_zero && verdict.zero;
        if (opt.json()) {
            json j;
            j["identity"] = identity_json(e, f, n, k);
            j["size"] = size > 0 ? size : n;
            j["verdict"] = verdict.zero ? "zero" : "nonzero";
            if (!verdict.zero) j["witness"] = verdict.witness;
            results.push_back(j);
        } else {
            out << k << "(e=" << e << ",f=" << f << ",n=" << n << ") at size "
                << (size > 0 ? size : n) << ": " << (verdict.zero ? "zero" : "nonzero") << "\n";
        }
    }
    if (opt.json()) out << results.dump() << "\n";
    return all_zero ? 0 : 1;
}

int cmd_deduce(const Options& opt, int n, std::ostream& out) {
    auto report = id::deduce_section11(n);
    if (opt.json()) {
        json j;
        j["n"] = n;
        j["nilpotency"] = {{"expression", expr_json(report.nilpotency_sub)},
                           {"verdict", report.nilpotency_zero ? "zero" : "nonzero"}};
        j["recursion"] = {{"expression", expr_json(report.recursion_sub)},
                          {"verdict", report.recursion_zero ? "zero" : "nonzero"}};
        out << j.dump() << "\n";
    } else {
        out << "substituted CH, all slots y <- x1^2 (n=" << n << "):\n  "
            << compact_expr(report.nilpotency_sub) << "\n  evaluates to "
            << (report.nilpotency_zero ? "zero" : "nonzero") << " on a generic fermionic matrix\n";
        out << "substituted CH, y <- x1^2 keeping x1 (n=" << n << "):\n  "
            << compact_expr(report.recursion_sub) << "\n  evaluates to "
            << (report.recursion_zero ? "zero" : "nonzero") << " on a generic fermionic matrix\n";
    }
    return report.all_zero() ? 0 : 1;
}

int cmd_ranks(const Options& opt, int m, int n, int e, bool have_e, std::ostream& out) {
    bool all_match = true;
    json rows = json::array();
    Integer expected = sf::codimension(m, n);
    for (int ee = have_e ? e : 0; ee <= (have_e ? e : m); ++ee) {
        auto r = id::relation_rank(m, ee, m - ee, n, opt.threads, opt.force);
        bool match = Integer(r.span_dim) == expected;
        all_match = all_match && match;
        if (opt.json()) {
            rows.push_back(json{{"m", m},
                                {"n", n},
                                {"e", ee},
                                {"f", m - ee},
                                {"span_dim", r.span_dim},
                                {"kernel_dim", r.kernel_dim},
                                {"codimension", expected.get_str()},
                                {"match", match}});
        } else {
            out << "m=" << m << " n=" << n << " e=" << ee << " f=" << m - ee
                << "  span=" << r.span_dim << " kernel=" << r.kernel_dim
                << "  c_m=" << expected.get_str() << (match ? "" : "  MISMATCH") << "\n";
        }
    }
    if (opt.json()) out << rows.dump() << "\n";
    return all_match ? 0 : 1;
}

int cmd_charges(const Options& opt, int lmax, int rank_at, bool traceless, std::ostream& out) {
    auto rows = id::charge_table(lmax, rank_at > 0 ? std::optional<int>(rank_at) : std::nullopt,
                                 traceless, opt.threads, opt.force);
    if (opt.json()) {
        json arr = json::array();
        for (auto& row : rows) {
            json j;
            j["charge"] = row.charge;
            json bos = json::array(), ferm = json::array();
            for (auto& mexpr : row.bosonic_monomials) bos.push_back(compact_expr(mexpr));
            for (auto& mexpr : row.fermionic_monomials) ferm.push_back(compact_expr(mexpr));
            j["bosonic"] = bos;
            j["fermionic"] = ferm;
            j["dim_bosonic"] = row.bosonic_monomials.size();
            j["dim_fermionic"] = row.fermionic_monomials.size();
            if (row.bosonic_rank) j["rank_bosonic"] = *row.bosonic_rank;
            if (row.fermionic_rank) j["rank_fermionic"] = *row.fermionic_rank;
            arr.push_back(j);
        }
        out << arr.dump() << "\n";
    } else {
        for (auto& row : rows) {
            out << "charge " << row.charge << ": dim " << row.bosonic_monomials.size() << " | "
                << row.fermionic_monomials.size();
            if (row.bosonic_rank)
                out << "   rank at n=" << rank_at << (traceless ? " traceless" : "") << ": "
                    << *row.bosonic_rank << " | " << *row.fermionic_rank;
            out << "\n";
            auto list = [&](const char* name, const std::vector<ft::TraceExpression>& ms) {
                if (ms.empty()) return;
                out << "  " << name << ":";
                for (auto& mexpr : ms) out << "  " << compact_expr(mexpr);
                out << "\n";
            };
            list("bosonic  ", row.bosonic_monomials);
            list("fermionic", row.fermionic_monomials);
        }
    }
    return 0;
}

int cmd_goodperms(const Options& opt, int m, int d, std::ostream& out) {
    Integer count = sf::count_d_good(m, d, opt.threads, opt.force);
    if (opt.json())
        out << json{{"m", m}, {"d", d}, {"count", count.get_str()}}.dump() << "\n";
    else
        out << "d-good permutations in S_" << m << " for d=" << d << ": " << count.get_str()
            << "\n";
    return 0;
}

int cmd_codim(const Options& opt, int m, int n, std::ostream& out) {
    Integer c = sf::codimension(m, n, opt.force);
    Integer kernel = factorial(unsigned(m)) - c;
    Integer good = sf::count_d_good(m, n + 1, opt.threads, opt.force);
    if (opt.json()) {
        out << json{{"m", m},
                    {"n", n},
                    {"codimension", c.get_str()},
                    {"kernel_dim", kernel.get_str()},
                    {"good_permutations", good.get_str()}}
                   .dump()
            << "\n";
    } else {
        out << "m=" << m << " n=" << n << "  c_m=" << c.get_str() << "  kernel=" << kernel.get_str()
            << "  (n+1)-good=" << good.get_str() << "\n";
    }
    return 0;
}

int cmd_index(const Options& opt, int n, int order, std::ostream& out) {
    auto series = qi::molien_weyl_index(n, order, opt.force);
    bool matches = series == qi::euler_product(order);
    if (opt.json()) {
        out << json{{"n", n},
                    {"order", order},
                    {"coefficients", series.coeff_strings()},
                    {"series", series.str()},
                    {"equals_euler_product", matches}}
                   .dump()
            << "\n";
    } else {
        out << series.str() << "\n";
        if (!matches) out << "WARNING: differs from (q;q)_inf\n";
    }
    return matches ? 0 : 1;
}

int cmd_andrews(const Options& opt, int n, int order, std::ostream& out) {
    auto report = qi::andrews_ct_check(n, order);
    if (opt.json()) {
        out << json{{"n", n},
                    {"order", order},
                    {"andrews_ct", report.andrews_ct.coeff_strings()},
                    {"symmetrized_ct", report.symmetrized_ct.coeff_strings()},
                    {"target", report.target.coeff_strings()},
                    {"ok", report.ok}}
                   .dump()
            << "\n";
    } else {
        out << "constant term (split form):       " << report.andrews_ct.str() << "\n";
        out << "constant term (symmetrized form): " << report.symmetrized_ct.str() << "\n";
        out << "(q;q)_inf^{1-n}:                  " << report.target.str() << "\n";
        out << (report.ok ? "identity verified" : "MISMATCH") << "\n";
    }
    return report.ok ? 0 : 1;
}

int cmd_series(const Options& opt, const std::string& mode, int n, int order, std::ostream& out) {
    qi::SeriesMode m;
    if (mode == "invariants")
        m = qi::SeriesMode::invariants;
    else if (mode == "equivariants")
        m = qi::SeriesMode::equivariants;
    else if (mode == "traceless")
        m = qi::SeriesMode::traceless;
    else if (mode == "free")
        m = qi::SeriesMode::free_traceless;
    else
        throw CLI::ValidationError("--mode must be invariants|equivariants|traceless|free");
    auto coeffs = qi::hilbert_series_by_rank(m, n, order, opt.threads, opt.force);
    json j;
    j["mode"] = mode;
    j["n"] = n;
    j["order"] = order;
    j["coefficients"] = coeffs;
    std::ostringstream text;
    {
        qi::QSeries s(order);
        for (int k = 0; k <= order; ++k) s.coeff(k) = coeffs[std::size_t(k)];
        text << s.str();
    }
    std::string extra;
    if (m == qi::SeriesMode::invariants) {
        auto closed = qi::invariant_series_closed(n);
        bool match = qi::reading_matches(closed, coeffs);
        j["closed_form"] = closed.text;
        j["closed_form_matches"] = match;
        extra = "closed form " + closed.text + (match ? " matches" : " DIFFERS");
    } else if (m == qi::SeriesMode::equivariants) {
        auto printed = qi::equivariant_series_printed(n);
        auto corrected = qi::equivariant_series_corrected(n);
        bool pm = qi::reading_matches(printed, coeffs);
        bool cm = qi::reading_matches(corrected, coeffs);
        j["printed_reading"] = printed.text;
        j["printed_reading_matches"] = pm;
        j["corrected_reading"] = corrected.text;
        j["corrected_reading_matches"] = cm;
        extra = "printed reading " + printed.text + (pm ? " matches" : " differs") +
                "; corrected reading " + corrected.text + (cm ? " matches" : " DIFFERS");
    } else if (m == qi::SeriesMode::traceless) {
        auto free_dims = qi::hilbert_series_by_rank(qi::SeriesMode::free_traceless, 0, order,
                                                    opt.threads, opt.force);
        int first_deficit = -1;
        for (int k = 0; k <= order && first_deficit < 0; ++k)
            if (coeffs[std::size_t(k)] != free_dims[std::size_t(k)]) first_deficit = k;
        j["free_coefficients"] = free_dims;
        j["first_deficit_charge"] = first_deficit;
        extra = first_deficit < 0 ? "no deficit against the free dimensions in range"
                                  : "first deficit against the free dimensions at charge " +
                                        std::to_string(first_deficit);
    }
    if (opt.json()) {
        out << j.dump() << "\n";
    } else {
        out << text.str() << "\n";
        if (!extra.empty()) out << extra << "\n";
    }
    return 0;
}

int cmd_dynkin(const Options& opt, int n, std::ostream& out) {
    auto residual = gmatrix::dynkin_residual(std::size_t(n));
    bool zero = residual.is_zero();
    if (opt.json()) {
        json j;
        j["n"] = n;
        j["residual_zero"] = zero;
        if (!zero) j["residual"] = json::parse(residual.to_json());
        out << j.dump() << "\n";
    } else {
        out << "n*xi^(2n-1) - sum xi^(2i) tr(xi^(2(n-i)-1))  at n=" << n << ": "
            << (zero ? "zero matrix" : "NONZERO") << "\n";
        if (!zero) out << residual.pretty();
    }
    return zero ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact invariants and trace identities of bosonic/fermionic matrices"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_flag("--force", opt.force, "override resource caps (may be very slow)");
    app.add_option("--threads", opt.threads, "worker budget for parallel evaluations")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();

    int n = 1, e = 0, f = 0, m = 1, d = 2, order = 8, size = 0, lmax = 7, rank_at = 0;
    std::string kind = "T", verify_kind = "both", mode = "invariants";
    bool traceless = false;

    auto* identity = app.add_subcommand("identity", "generate or verify CH/T identities");
    identity->require_subcommand(1);
    auto* gen = identity->add_subcommand("gen", "print the identity");
    gen->add_option("--n", n, "matrix size")->required();
    gen->add_option("--e", e, "bosonic variable count")->required();
    gen->add_option("--f", f, "fermionic variable count")->required();
    gen->add_option("--kind", kind, "T or CH")->check(CLI::IsMember({"T", "CH"}));
    auto* verify = identity->add_subcommand("verify", "evaluate on generic matrices");
    verify->add_option("--n", n, "matrix size")->required();
    verify->add_option("--e", e, "bosonic variable count")->required();
    verify->add_option("--f", f, "fermionic variable count")->required();
    verify->add_option("--kind", verify_kind, "T, CH or both")
        ->check(CLI::IsMember({"T", "CH", "both"}));
    verify->add_option("--size", size, "evaluate at this size instead of n");

    auto* deduce = app.add_subcommand("deduce-11", "one-matrix facts from CH substitutions");
    deduce->add_option("--n", n, "matrix size")->required()->check(CLI::Range(1, 3));

    auto* ranks = app.add_subcommand("ranks", "rank of the evaluated multilinear span");
    ranks->add_option("--m", m, "number of variables")->required();
    ranks->add_option("--n", n, "matrix size")->required();
    auto* ranks_e = ranks->add_option("--e", e, "restrict to one bosonic count");

    auto* charges = app.add_subcommand("charges", "charge-graded trace monomial table");
    charges->add_option("--lmax", lmax, "maximum charge")->required();
    charges->add_option("--rank-at", rank_at, "also rank at this matrix size");
    charges->add_flag("--traceless", traceless, "use traceless generic matrices for ranks");

    auto* goodperms = app.add_subcommand("goodperms", "count d-good permutations");
    goodperms->add_option("--m", m, "symmetric group degree")->required();
    goodperms->add_option("--d", d, "forbidden descending run length")->required();

    auto* codim = app.add_subcommand("codim", "codimension c_m(M_n) and friends");
    codim->add_option("--m", m, "degree")->required();
    codim->add_option("--n", n, "matrix size")->required();

    auto* index = app.add_subcommand("index", "Molien-Weyl index of fermionic matrices");
    index->add_option("--n", n, "matrix size")->required();
    index->add_option("--order", order, "q truncation order")->required();

    auto* andrews = app.add_subcommand("andrews", "constant-term identity check");
    andrews->add_option("--n", n, "number of torus variables")->required();
    andrews->add_option("--order", order, "q truncation order")->required();

    auto* series = app.add_subcommand("series", "charge-graded Hilbert series by exact rank");
    series->add_option("--mode", mode, "invariants|equivariants|traceless|free")->required();
    series->add_option("--n", n, "matrix size");
    series->add_option("--order", order, "truncation order")->required();

    auto* dynkin = app.add_subcommand("dynkin", "one-matrix trace recursion residual");
    dynkin->add_option("--n", n, "matrix size")->required()->check(CLI::Range(1, 3));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (opt.force) err << "warning: resource caps disabled, this may take very long\n";
    } catch (const CLI::ParseError& ex) {
        if (ex.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << ex.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_identity_gen(opt, n, e, f, kind, out);
        if (verify->parsed()) return cmd_identity_verify(opt, n, e, f, verify_kind, size, out);
        if (deduce->parsed()) return cmd_deduce(opt, n, out);
        if (ranks->parsed()) return cmd_ranks(opt, m, n, e, ranks_e->count() > 0, out);
        if (charges->parsed()) return cmd_charges(opt, lmax, rank_at, traceless, out);
        if (goodperms->parsed()) return cmd_goodperms(opt, m, d, out);
        if (codim->parsed()) return cmd_codim(opt, m, n, out);
        if (index->parsed()) return cmd_index(opt, n, order, out);
        if (andrews->parsed()) return cmd_andrews(opt, n, order, out);
        if (series->parsed()) return cmd_series(opt, mode, n, order, out);
        if (dynkin->parsed()) return cmd_dynkin(opt, n, out);
    } catch (const TooLarge& ex) {
        err << "resource guard: " << ex.what() << "\n";
        return 2;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    } catch (const CLI::Error& ex) {
        err << "usage error: " << ex.what() << "\n";
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace supertrace::cli

// expr_from_json is exercised by the round-trip tests
namespace supertrace::cli::detail {
freetrace::TraceExpression expression_from_json_text(const std::string& text) {
    return expr_from_json(nlohmann::json::parse(text));
}
}  // namespace supertrace::cli::detail
