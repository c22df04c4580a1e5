// Command-line front end: builds the standard spaces, computes homology and
// cohomology, and moves characters, theories, and witnesses across the JSON
// formats. Exit codes: 0 success, 1 a mathematical invariant failed
// (validation, non-cycle input, non-isomorphic theories), 2 malformed input
// (bad JSON, bad schema, bad command line).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chainft/json_io.hpp"

namespace {

using namespace chainft;

bool stdin_taken = false;

// empty path or "-" means stdin; only one input may come from there
json read_json_input(const std::string& path, const std::string& what) {
    std::string text;
    if (path.empty() || path == "-") {
        if (stdin_taken) throw ParseError(what + ": stdin already used by another input");
        stdin_taken = true;
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError(what + ": cannot open \"" + path + "\"");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }
    return json::parse(text);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write \"" + path + "\"");
    out << text << "\n";
}

Complex read_complex(const std::string& path) {
    return complex_from_json(read_json_input(path, "complex"));
}

std::string group_text(Index betti, const std::vector<Int>& torsion) {
    std::string s;
    for (Index i = 0; i < betti; ++i) s += (s.empty() ? "Z" : " + Z");
    for (const Int& d : torsion) s += (s.empty() ? "Z/" : " + Z/") + d.str();
    return s.empty() ? "0" : s;
}

json torsion_json(const std::vector<Int>& torsion) {
    json out = json::array();
    for (const Int& d : torsion) out.push_back(detail::int_to_json(d));
    return out;
}

// prints each broken invariant; returns 1 if there were any
template <typename T>
int report_violations(const T& object) {
    const std::vector<Violation> violations = validate(object);
    for (const Violation& v : violations) std::cout << v << "\n";
    return violations.empty() ? 0 : 1;
}

struct Options {
    std::string complex_path;
    std::string input_path;  // character, theory, or form, depending on command
    std::string second_path;
    std::string cycle_path;
    std::string output_path;
    std::string format = "table";
    std::string builder;
    std::vector<Index> params;
    Index degree = 0;
};

int run_build(const Options& opt) {
    Complex complex = [&] {
        try {
            if (opt.params.size() > 1)
                throw std::invalid_argument("build takes at most one parameter");
            return opt.params.empty()
                       ? build_standard(opt.builder)
                       : build_standard(opt.builder, opt.params.front());
        } catch (const std::invalid_argument& e) {
            // unknown name or wrong parameters: command-line misuse, not math
            throw ParseError(e.what());
        }
    }();
    write_text(opt.output_path, complex_to_json(complex).dump(2));
    return 0;
}

int run_homology(const Options& opt, bool cochain_level) {
    const Complex complex = read_complex(opt.complex_path);
    const auto [betti, torsion] = [&] {
        if (cochain_level) {
            const CohomologyStructure h(complex, opt.degree);
            return std::pair(h.betti(), h.torsion());
        }
        const HomologyStructure h = homology(complex, opt.degree);
        return std::pair(h.betti(), h.torsion());
    }();
    if (opt.format == "json") {
        const json out = {{"degree", opt.degree},
                          {"betti", betti},
                          {"torsion", torsion_json(torsion)}};
        write_text(opt.output_path, out.dump(2));
    } else {
        std::ostringstream line;
        line << "H" << (cochain_level ? "^" : "_") << opt.degree << " = "
             << group_text(betti, torsion);
        write_text(opt.output_path, line.str());
    }
    return 0;
}

int run_character_validate(const Options& opt) {
    const Complex complex = read_complex(opt.complex_path);
    const DifferentialCharacter f =
        character_from_json(complex, read_json_input(opt.input_path, "character"));
    if (const int failed = report_violations(f)) return failed;
    std::cout << "valid\n";
    return 0;
}

int run_character_from_form(const Options& opt) {
    const Complex complex = read_complex(opt.complex_path);
    const RationalCochain w = cochain_from_json(complex, read_json_input(opt.input_path, "form"));
    write_text(opt.output_path, character_to_json(character_from_form(w)).dump(2));
    return 0;
}

int run_character_eval(const Options& opt) {
    const Complex complex = read_complex(opt.complex_path);
    const DifferentialCharacter f =
        character_from_json(complex, read_json_input(opt.input_path, "character"));
    if (const int failed = report_violations(f)) return failed;
    const Chain z = chain_from_json(complex, read_json_input(opt.cycle_path, "cycle"));
    std::cout << to_fraction_string(evaluate(f, z).value()) << "\n";
    return 0;
}

int run_character_class(const Options& opt) {
    const Complex complex = read_complex(opt.complex_path);
    const DifferentialCharacter f =
        character_from_json(complex, read_json_input(opt.input_path, "character"));
    const QuotientClass c = characteristic_class(f);
    if (opt.format == "json") {
        json free_part = json::array();
        for (const Int& x : c.free_part) free_part.push_back(detail::int_to_json(x));
        json torsion_part = json::array();
        for (const Int& x : c.torsion_part) torsion_part.push_back(detail::int_to_json(x));
        write_text(opt.output_path, json{{"free", free_part}, {"torsion", torsion_part}}.dump(2));
    } else {
        std::ostringstream line;
        line << c;
        write_text(opt.output_path, line.str());
    }
    return 0;
}

int run_cft_from_form(const Options& opt) {
    const Complex complex = read_complex(opt.complex_path);
    const RationalCochain w = cochain_from_json(complex, read_json_input(opt.input_path, "form"));
    write_text(opt.output_path, theory_to_json(cft_from_form(w)).dump(2));
    return 0;
}

int run_cft_from_char(const Options& opt) {
    const Complex complex = read_complex(opt.complex_path);
    const DifferentialCharacter f =
        character_from_json(complex, read_json_input(opt.input_path, "character"));
    if (const int failed = report_violations(f)) return failed;
    write_text(opt.output_path, theory_to_json(cft_from_character(f)).dump(2));
    return 0;
}

// With a complex at hand this checks the theory and the cycle properly.
// Without one the lift is evaluated by label alone: linearity makes the
// result correct whenever the inputs really are a theory and a cycle of its
// degree, but nothing can be verified.
int run_cft_holonomy(const Options& opt) {
    const json theory_doc = read_json_input(opt.input_path, "theory");
    const json cycle_doc = read_json_input(opt.cycle_path, "cycle");
    if (!opt.complex_path.empty()) {
        const Complex complex = read_complex(opt.complex_path);
        const ChainFieldTheory e = theory_from_json(complex, theory_doc);
        if (const int failed = report_violations(e)) return failed;
        const Chain z = chain_from_json(complex, cycle_doc);
        std::cout << to_fraction_string(holonomy(e, z).value()) << "\n";
        return 0;
    }
    const Index theory_degree =
        detail::json_to_index(detail::expect_field(theory_doc, "degree", "theory"),
                              "theory: degree");
    const Index cycle_degree =
        detail::json_to_index(detail::expect_field(cycle_doc, "degree", "cycle"),
                              "cycle: degree");
    if (theory_degree != cycle_degree)
        throw ParseError("cycle degree " + std::to_string(cycle_degree) +
                         " does not match theory degree " + std::to_string(theory_degree));
    const json& lift = detail::expect_field(theory_doc, "lift", "theory");
    const json& coeffs = detail::expect_field(cycle_doc, "coeffs", "cycle");
    if (!lift.is_object() || !coeffs.is_object())
        throw ParseError("holonomy: \"lift\" and \"coeffs\" must be objects");
    Phase total;
    for (const auto& [label, coeff] : coeffs.items()) {
        const auto it = lift.find(label);
        if (it == lift.end()) continue;  // absent labels carry phase zero
        total += detail::json_to_int(coeff, "cycle: coefficient of \"" + label + "\"") *
                 Phase(detail::json_to_rat(*it, "theory: lift of \"" + label + "\""));
    }
    std::cout << to_fraction_string(total.value()) << "\n";
    return 0;
}

int run_cft_flat(const Options& opt) {
    const Complex complex = read_complex(opt.complex_path);
    const ChainFieldTheory e =
        theory_from_json(complex, read_json_input(opt.input_path, "theory"));
    if (const int failed = report_violations(e)) return failed;
    const bool flat = is_flat(e);
    const bool invariant = is_deformation_invariant(e);
    if (opt.format == "json") {
        write_text(opt.output_path,
                   json{{"flat", flat}, {"deformation_invariant", invariant}}.dump(2));
    } else {
        std::cout << "flat: " << (flat ? "yes" : "no") << "\n";
        std::cout << "deformation invariant: " << (invariant ? "yes" : "no") << "\n";
    }
    return 0;
}

int run_cft_iso(const Options& opt) {
    const Complex complex = read_complex(opt.complex_path);
    const ChainFieldTheory a = theory_from_json(complex, read_json_input(opt.input_path, "a"));
    const ChainFieldTheory b = theory_from_json(complex, read_json_input(opt.second_path, "b"));
    if (const int failed = report_violations(a)) return failed;
    if (const int failed = report_violations(b)) return failed;
    if (a.degree() != b.degree()) {
        std::cout << "not isomorphic: degrees differ\n";
        return 1;
    }
    if (!(a.curvature() == b.curvature())) {
        for (Index i = 0; i < complex.cell_count(a.degree() + 1); ++i)
            if (a.curvature().value(i) != b.curvature().value(i)) {
                std::cout << "not isomorphic: curvature differs on cell "
                          << complex.label(a.degree() + 1, i) << "\n";
                return 1;
            }
    }
    const DifferentialCharacter ha = holonomy_character(a);
    const DifferentialCharacter hb = holonomy_character(b);
    for (Index i = 0; i < ha.basis_phases().size(); ++i)
        if (!(ha.basis_phases()[i] == hb.basis_phases()[i])) {
            std::cout << "not isomorphic: holonomy differs on basis cycle " << i << "\n";
            return 1;
        }
    const std::optional<IsoWitness> w = isomorphism_witness(a, b);
    if (!w) throw std::logic_error("iso: witness construction failed after agreement checks");
    write_text(opt.output_path, witness_to_json(*w).dump(2));
    return 0;
}

int run_cft_classify_flat(const Options& opt) {
    if (opt.degree < 1) throw ParseError("classify-flat: --degree must be at least 1");
    const Complex complex = read_complex(opt.complex_path);
    const FlatClassification c = classify_flat(complex, opt.degree - 1);
    if (opt.format == "json") {
        json torsion_generators = json::array();
        for (const ChainFieldTheory& g : c.torsion_generators)
            torsion_generators.push_back(theory_to_json(g));
        json free_generators = json::array();
        for (const ChainFieldTheory& g : c.free_generators)
            free_generators.push_back(theory_to_json(g));
        const json out = {{"degree", opt.degree},
                          {"betti", c.betti},
                          {"torsion", torsion_json(c.torsion)},
                          {"group", c.group_symbol()},
                          {"torsion_generators", torsion_generators},
                          {"free_generators", free_generators}};
        write_text(opt.output_path, out.dump(2));
    } else {
        write_text(opt.output_path, c.group_symbol());
    }
    return 0;
}

void add_format(CLI::App* cmd, Options& opt) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    int (*handler)(const Options&) = nullptr;

    CLI::App app{"exact chain-level field theories on finite cellular complexes"};
    app.require_subcommand(1);

    CLI::App* build = app.add_subcommand("build", "emit a standard complex as JSON");
    build->add_option("name", opt.builder, "circle, torus2_min, klein_min, sphere_cube, torus3_min")
        ->required();
    build->add_option("params", opt.params, "builder parameter (circle edge count)");
    build->add_option("-o,--output", opt.output_path, "output path (default stdout)");
    build->callback([&] { handler = run_build; });

    const auto complex_option = [&](CLI::App* cmd, bool required) {
        CLI::Option* o = cmd->add_option("--complex", opt.complex_path,
                                         required ? "complex JSON path"
                                                  : "complex JSON path (default stdin)");
        if (required) o->required();
        (void)o;
    };

    CLI::App* hom = app.add_subcommand("homology", "integral homology of a complex");
    hom->add_option("-k,--degree", opt.degree, "homology degree")->required();
    complex_option(hom, false);
    hom->add_option("-o,--output", opt.output_path);
    add_format(hom, opt);
    hom->callback([&] { handler = [](const Options& o) { return run_homology(o, false); }; });

    CLI::App* cohom = app.add_subcommand("cohomology", "integral cohomology of a complex");
    cohom->add_option("-k,--degree", opt.degree, "cohomology degree")->required();
    complex_option(cohom, false);
    cohom->add_option("-o,--output", opt.output_path);
    add_format(cohom, opt);
    cohom->callback([&] { handler = [](const Options& o) { return run_homology(o, true); }; });

    CLI::App* character = app.add_subcommand("character", "differential character operations");
    character->require_subcommand(1);

    CLI::App* cval = character->add_subcommand("validate", "check the defining identities");
    cval->add_option("--character", opt.input_path, "character JSON (default stdin)");
    complex_option(cval, true);
    cval->callback([&] { handler = run_character_validate; });

    CLI::App* cform = character->add_subcommand("from-form", "character of a global form");
    cform->add_option("--form", opt.input_path, "cochain JSON (default stdin)");
    complex_option(cform, true);
    cform->add_option("-o,--output", opt.output_path);
    cform->callback([&] { handler = run_character_from_form; });

    CLI::App* ceval = character->add_subcommand("eval", "evaluate a character on a cycle");
    ceval->add_option("--character", opt.input_path, "character JSON (default stdin)");
    complex_option(ceval, true);
    ceval->add_option("--cycle", opt.cycle_path, "chain JSON path")->required();
    ceval->callback([&] { handler = run_character_eval; });

    CLI::App* cclass = character->add_subcommand("class", "characteristic class in cohomology");
    cclass->add_option("--character", opt.input_path, "character JSON (default stdin)");
    complex_option(cclass, true);
    cclass->add_option("-o,--output", opt.output_path);
    add_format(cclass, opt);
    cclass->callback([&] { handler = run_character_class; });

    CLI::App* cft = app.add_subcommand("cft", "chain field theory operations");
    cft->require_subcommand(1);

    CLI::App* tform = cft->add_subcommand("from-form", "theory of a global form");
    tform->add_option("--form", opt.input_path, "cochain JSON (default stdin)");
    complex_option(tform, true);
    tform->add_option("-o,--output", opt.output_path);
    tform->callback([&] { handler = run_cft_from_form; });

    CLI::App* tchar = cft->add_subcommand("from-char", "theory realizing a character");
    tchar->add_option("--character", opt.input_path, "character JSON (default stdin)");
    complex_option(tchar, true);
    tchar->add_option("-o,--output", opt.output_path);
    tchar->callback([&] { handler = run_cft_from_char; });

    CLI::App* thol = cft->add_subcommand("holonomy", "evaluate a theory on a cycle");
    thol->add_option("--theory", opt.input_path, "theory JSON (default stdin)");
    thol->add_option("--cycle", opt.cycle_path, "chain JSON path")->required();
    thol->add_option("--complex", opt.complex_path,
                     "complex JSON path; without it the lift is applied by label, unchecked");
    thol->callback([&] { handler = run_cft_holonomy; });

    CLI::App* tflat = cft->add_subcommand("flat", "flatness and deformation invariance");
    tflat->add_option("--theory", opt.input_path, "theory JSON (default stdin)");
    complex_option(tflat, true);
    add_format(tflat, opt);
    tflat->callback([&] { handler = run_cft_flat; });

    CLI::App* tiso = cft->add_subcommand("iso", "decide isomorphism, emit a witness");
    tiso->add_option("--a", opt.input_path, "first theory JSON path")->required();
    tiso->add_option("--b", opt.second_path, "second theory JSON path")->required();
    complex_option(tiso, true);
    tiso->add_option("-o,--output", opt.output_path);
    tiso->callback([&] { handler = run_cft_iso; });

    CLI::App* tclassify = cft->add_subcommand("classify-flat", "flat theories up to isomorphism");
    tclassify->add_option("-k,--degree", opt.degree, "cycle degree of the theories")->required();
    complex_option(tclassify, true);
    tclassify->add_option("-o,--output", opt.output_path);
    add_format(tclassify, opt);
    tclassify->callback([&] { handler = run_cft_classify_flat; });

    try {
        app.parse(argc, argv);
        return handler ? handler(opt) : 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
