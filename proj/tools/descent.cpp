#include "CLI11.hpp"

#include "descent/ez_descent.hpp"
#include "descent/filtered.hpp"
#include "descent/formats.hpp"
#include "descent/total.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace descent;

namespace {

// a failed property; exit code 1
struct PropertyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string ring_name;
    int field = 0;
    int truncate = -1;
    int levels = 3;
    std::uint64_t seed = 1;
    int trials = 10;
    bool normalized = false;
    int r = 1;
    bool page_table = false;
    std::string out;
    std::string axiom = "all";
    std::string witness_dir = "sdc_witness";
    bool inject_fault = false;
    std::vector<std::string> inputs;
};

std::optional<Ring> requested_ring(const Options& o) {
    if (o.field && !o.ring_name.empty()) throw std::invalid_argument("give either --ring or --field, not both");
    if (o.field) {
        if (o.field < 2) throw std::invalid_argument("--field needs a prime");
        return Ring::prime_field(o.field);
    }
    if (o.ring_name.empty()) return std::nullopt;
    if (o.ring_name == "Z") return Ring::integers();
    if (o.ring_name.size() > 1 && (o.ring_name[0] == 'F' || o.ring_name[0] == 'f')) {
        try {
            return Ring::prime_field(std::stoi(o.ring_name.substr(1)));
        } catch (const std::logic_error&) {
        }
    }
    throw std::invalid_argument("--ring expects Z or F<p>, got '" + o.ring_name + "'");
}

std::string extension(const std::string& path) { return std::filesystem::path(path).extension().string(); }

const std::string& single_input(const Options& o, const std::string& cmd) {
    if (o.inputs.size() != 1) throw std::invalid_argument(cmd + " takes exactly one input file");
    return o.inputs[0];
}

void check_ring_matches(const Options& o, const Ring& file_ring) {
    auto r = requested_ring(o);
    if (r && *r != file_ring)
        throw std::invalid_argument("input is over " + file_ring.name() + " but " + r->name() + " was requested");
}

std::string homology_lines(const std::vector<HomologyGroup>& h, const Ring& r, int from = 0) {
    std::ostringstream os;
    for (std::size_t q = 0; q < h.size(); ++q) os << "H" << from + static_cast<int>(q) << ": " << h[q].to_string(r) << "\n";
    return os.str();
}

std::string complex_homology(const BoundedComplex& c) {
    std::vector<HomologyGroup> h;
    if (c.empty_support()) return "";
    for (int q = c.lo; q <= c.hi; ++q) h.push_back(homology(c, q));
    return homology_lines(h, c.ring, c.lo);
}

int truncation(const Options& o, int fallback) { return o.truncate >= 0 ? o.truncate : fallback; }

std::string cmd_homology(const Options& o) {
    const std::string& path = single_input(o, "homology");
    const std::string ext = extension(path), text = read_file(path);
    if (ext == ".sset") {
        SSet S = parse_sset(text);
        Ring r = requested_ring(o).value_or(Ring::integers());
        return homology_lines(homology_of_sset(S, r, o.normalized), r);
    }
    if (ext == ".cplx") {
        BoundedComplex c = parse_cplx(text);
        check_ring_matches(o, c.ring);
        return complex_homology(c);
    }
    if (ext == ".fcplx") {
        FilteredComplex F = parse_fcplx(text);
        check_ring_matches(o, F.A.ring);
        return complex_homology(F.A);
    }
    if (ext == ".scplx") {
        SComplex X = parse_scplx(text);
        check_ring_matches(o, X.cat.ring);
        const int Q = truncation(o, X.top());
        BoundedComplex s = o.normalized ? simple_sN(X, Q).c : simple_s(X, Q);
        return homology_lines(homology_below(s, Q), X.cat.ring);
    }
    if (ext == ".bisimp") {
        // homology of the diagonal
        SMod Z = parse_bisimp(text);
        check_ring_matches(o, Z.cat.ring);
        SMod D = diagonal(truncate(Z, Shape({Z.top(0), Z.top(1)}, {0, 0}, true)));
        BoundedComplex k = o.normalized ? K_N(D).c : K(D);
        return homology_lines(homology_below(k, D.top()), Z.cat.ring);
    }
    throw std::invalid_argument("homology: unsupported input type '" + ext + "'");
}

std::string cmd_simple(const Options& o) {
    SComplex X = parse_scplx(read_file(single_input(o, "simple")));
    check_ring_matches(o, X.cat.ring);
    const int Q = truncation(o, X.top());
    return print_cplx(o.normalized ? simple_sN(X, Q).c : simple_s(X, Q));
}

std::string cmd_cone(const Options& o) {
    ChainMap f = parse_cmap(read_file(single_input(o, "cone")));
    check_ring_matches(o, f.src.ring);
    if (o.truncate >= 0) return print_cplx(cone_in_D(f, o.truncate).c);
    return print_cplx(cone(f).c);
}

std::string cmd_tot(const Options& o) {
    SMod Z = parse_bisimp(read_file(single_input(o, "tot")));
    check_ring_matches(o, Z.cat.ring);
    SMod T = tot(Z);
    auto v = check_identities(T);
    if (!v.empty()) throw PropertyFailure("tot: simplicial identity fails: " + v.front().to_string());
    return print_scplx(as_complexes(T));
}

std::string cmd_dec(const Options& o) {
    const std::string& path = single_input(o, "dec");
    if (extension(path) != ".sset") throw std::invalid_argument("dec: expects a .sset file");
    SSet S = parse_sset(read_file(path));
    Ring r = requested_ring(o).value_or(Ring::integers());
    // level n of the result reads level 2n+1 of the input
    const int N = truncation(o, (S.top() - 1) / 2);
    if (N < 0 || 2 * N + 1 > S.top()) throw std::invalid_argument("dec: the input needs at least 2 * truncate + 1 levels");
    SMod D = total_decalage(free_linearize(S, r), N);
    auto v = check_identities(D);
    if (!v.empty()) throw PropertyFailure("dec: simplicial identity fails: " + v.front().to_string());
    return print_bisimp(D);
}

FilteredComplex read_fcplx(const Options& o, const std::string& cmd) {
    const std::string& path = single_input(o, cmd);
    if (extension(path) != ".fcplx") throw std::invalid_argument(cmd + ": expects a .fcplx file");
    FilteredComplex F = parse_fcplx(read_file(path));
    check_ring_matches(o, F.A.ring);
    return F;
}

std::string cmd_spectral(const Options& o) {
    FilteredComplex F = read_fcplx(o, "spectral");
    if (o.r < 0) throw std::invalid_argument("--r must be nonnegative");
    SpectralPage P = spectral_page(F, o.r);
    if (!page_squares_to_zero(P)) throw PropertyFailure("spectral: d_r does not square to zero");
    if (o.page_table) return P.table();
    std::ostringstream os;
    for (auto& [key, e] : P.E) {
        if (!e.dim()) continue;
        os << "E_" << o.r << "^{" << key.first << "," << key.second << "}: " << F.A.ring.name() << "^" << e.dim() << "\n";
    }
    for (auto& [key, m] : P.d) {
        os << "d_" << o.r << " " << key.first << " " << key.second << "\n";
        write_matrix(os, m);
    }
    return os.str();
}

std::string cmd_decalage(const Options& o) {
    FilteredComplex F = read_fcplx(o, "decalage");
    FilteredComplex D = decalage(F);
    D.validate();
    return print_fcplx(D);
}

// parse and print again, in the canonical layout
std::string cmd_format(const Options& o) {
    const std::string& path = single_input(o, "format");
    const std::string ext = extension(path), text = read_file(path);
    if (ext == ".cplx") return print_cplx(parse_cplx(text));
    if (ext == ".cmap") return print_cmap(parse_cmap(text));
    if (ext == ".scplx") return print_scplx(parse_scplx(text));
    if (ext == ".sset") return print_sset(parse_sset(text));
    if (ext == ".bisimp") return print_bisimp(parse_bisimp(text));
    if (ext == ".fcplx") return print_fcplx(parse_fcplx(text));
    throw std::invalid_argument("format: unknown file type '" + ext + "'");
}

// each input is a .cmap; a `~` prefix takes it as a wrong-way leg (a quasi-isomorphism)
std::string cmd_zigzag(const Options& o) {
    if (o.inputs.empty()) throw std::invalid_argument("zigzag: at least one map expected");
    std::optional<ZigZag> acc;
    for (const auto& item : o.inputs) {
        const bool back = !item.empty() && item[0] == '~';
        ChainMap m = parse_cmap(read_file(back ? item.substr(1) : item));
        if (!m.src.ring.is_field()) throw std::invalid_argument("zigzag: maps over a prime field expected");
        ZigZag z;
        if (back) {
            if (!is_quasi_iso(m)) throw PropertyFailure("zigzag: wrong-way leg " + item.substr(1) + " is not a quasi-isomorphism");
            z = ZigZag{m.tgt, m.src, m.tgt, ChainMap::identity(m.tgt), m};
        } else {
            z = zigzag_of(m);
        }
        if (acc && !(acc->Y == z.X)) throw std::invalid_argument("zigzag: " + item + " does not start where the previous leg ends");
        acc = acc ? zigzag_compose(*acc, z) : z;
    }
    std::ostringstream os;
    const BoundedComplex& X = acc->X;
    if (X.empty_support()) return "";
    for (int q = X.lo; q <= X.hi; ++q) {
        Matrix h = zigzag_homology(*acc, q);
        os << "H" << q << " " << h.rows() << " x " << h.cols() << "\n";
        if (h.rows() && h.cols()) write_matrix(os, h);
    }
    return os.str();
}

std::string witness_file_name(const SdcTrial& t) {
    std::string ax = t.axiom;
    for (auto& ch : ax)
        if (ch == '\'') ch = 'p';
    return "axiom_" + ax + "_trial_" + std::to_string(t.k) + ".txt";
}

std::size_t max_rank_from_env() {
    const char* v = std::getenv("DESCENT_MAX_RANK");
    if (!v || !*v) return 4;
    try {
        long n = std::stol(v);
        if (n < 1) throw std::invalid_argument("");
        return static_cast<std::size_t>(n);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("DESCENT_MAX_RANK must be a positive integer");
    }
}

std::string cmd_sdc_verify(const Options& o, bool& failed) {
    if (!o.inputs.empty()) throw std::invalid_argument("sdc-verify takes no input files");
    SdcConfig cfg;
    cfg.axiom = o.axiom;
    cfg.seed = o.seed;
    cfg.trials = o.trials;
    cfg.ring = requested_ring(o).value_or(Ring::prime_field(2));
    cfg.levels = o.levels;
    cfg.Q = truncation(o, o.levels);
    cfg.max_rank = max_rank_from_env();
    cfg.inject_fault = o.inject_fault;
    if (cfg.trials < 1) throw std::invalid_argument("--trials must be positive");
    SdcReport rep = sdc_verify(cfg);
    std::vector<std::string> names(rep.trials.size());
    for (std::size_t i = 0; i < rep.trials.size(); ++i) {
        const auto& t = rep.trials[i];
        if (t.pass) continue;
        std::filesystem::create_directories(o.witness_dir);
        names[i] = (std::filesystem::path(o.witness_dir) / witness_file_name(t)).string();
        std::ofstream w(names[i]);
        w << "# axiom " << t.axiom << " trial " << t.k << ": " << t.reason << "\n" << t.witness;
        if (!w) throw std::runtime_error("cannot write witness " + names[i]);
    }
    failed = !rep.all_pass();
    return rep.text(&names);
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + o.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"descent: chain-level descent computations"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c, bool files) {
        c->add_option("--ring", o.ring_name, "Z or F<p>");
        c->add_option("--field", o.field, "prime p, same as --ring F<p>");
        c->add_option("-o", o.out, "write the output here instead of stdout");
        if (files) c->add_option("inputs", o.inputs, "input files")->required();
    };

    auto* homology_cmd = app.add_subcommand("homology", "homology of a .sset, .cplx, .fcplx, .scplx or .bisimp file");
    common(homology_cmd, true);
    homology_cmd->add_flag("--normalized", o.normalized, "use normalized chains");
    homology_cmd->add_option("--truncate", o.truncate, "truncation of the simple");

    auto* simple_cmd = app.add_subcommand("simple", "simple complex of a .scplx file");
    common(simple_cmd, true);
    simple_cmd->add_flag("--normalized", o.normalized, "normalized simple");
    simple_cmd->add_option("--truncate", o.truncate, "truncation degree Q");

    auto* cone_cmd = app.add_subcommand("cone", "cone of a .cmap; with --truncate, the cone in the descent category");
    common(cone_cmd, true);
    cone_cmd->add_option("--truncate", o.truncate, "truncation degree Q");

    auto* tot_cmd = app.add_subcommand("tot", "total simplicial object of a .bisimp file, as .scplx");
    common(tot_cmd, true);

    auto* dec_cmd = app.add_subcommand("dec", "total decalage of a linearized .sset, as .bisimp");
    common(dec_cmd, true);
    dec_cmd->add_option("--truncate", o.truncate, "levels of the result; the input needs 2 * truncate + 1");

    auto* spectral_cmd = app.add_subcommand("spectral", "page E_r of a .fcplx");
    common(spectral_cmd, true);
    spectral_cmd->add_option("--r", o.r, "page number")->default_val(1);
    spectral_cmd->add_flag("--page-table", o.page_table, "print the page as a table of dimensions");

    auto* decalage_cmd = app.add_subcommand("decalage", "decalage of a .fcplx");
    common(decalage_cmd, true);

    auto* zigzag_cmd = app.add_subcommand("zigzag", "compose .cmap legs (prefix ~ for a wrong-way leg)");
    common(zigzag_cmd, true);

    auto* format_cmd = app.add_subcommand("format", "parse a file and print it in canonical form");
    common(format_cmd, true);

    auto* sdc_cmd = app.add_subcommand("sdc-verify", "check the descent axioms on random instances");
    common(sdc_cmd, false);
    sdc_cmd->add_option("--axiom", o.axiom, "3, 4, 5, 6, 6', 7, 8, compat or all");
    sdc_cmd->add_option("--levels", o.levels, "simplicial truncation");
    sdc_cmd->add_option("--truncate", o.truncate, "truncation of the simple (default: levels)");
    sdc_cmd->add_option("--seed", o.seed, "base seed");
    sdc_cmd->add_option("--trials", o.trials, "trials per axiom");
    sdc_cmd->add_option("--witness-dir", o.witness_dir, "where failing instances are written");
    sdc_cmd->add_flag("--inject-fault", o.inject_fault, "break the checked construction on purpose");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    bool failed = false;
    try {
        std::string out;
        if (*homology_cmd)
            out = cmd_homology(o);
        else if (*simple_cmd)
            out = cmd_simple(o);
        else if (*cone_cmd)
            out = cmd_cone(o);
        else if (*tot_cmd)
            out = cmd_tot(o);
        else if (*dec_cmd)
            out = cmd_dec(o);
        else if (*spectral_cmd)
            out = cmd_spectral(o);
        else if (*decalage_cmd)
            out = cmd_decalage(o);
        else if (*format_cmd)
            out = cmd_format(o);
        else if (*zigzag_cmd)
            out = cmd_zigzag(o);
        else
            out = cmd_sdc_verify(o, failed);
        emit(o, out);
    } catch (const PropertyFailure& e) {
        std::cerr << "descent: " << e.what() << "\n";
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "descent: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "descent: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "descent: " << e.what() << "\n";
        return 2;
    }
    return failed ? 1 : 0;
}
