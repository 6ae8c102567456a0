// qtail: emit named series, run verification suites, evaluate torus knot
// invariants and closed networks.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qtail/builtin_suites.hpp"
#include "qtail/json_io.hpp"
#include "qtail/network_format.hpp"
#include "qtail/registry.hpp"
#include "qtail/verify.hpp"

using namespace qtail;

namespace {

constexpr int exit_usage = 2;

class Output {
public:
    explicit Output(const std::string &path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw domain_error("cannot open '" + path + "' for writing");
        }
    }
    std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string exponent_string(int k, int quarter)
{
    if (!quarter) return std::to_string(k);
    mpq_class e(4 * k + quarter, 4);
    e.canonicalize();
    return e.get_str();
}

void write_series(std::ostream &os, const QSeries &s, const std::string &format)
{
    if (format == "json") {
        os << to_json(s).dump() << "\n";
    } else if (format == "csv") {
        os << "exponent,numerator,denominator\n";
        for (int j = 0; j < s.order(); ++j) {
            const mpq_class &c = s.coeffs()[static_cast<std::size_t>(j)];
            os << exponent_string(s.shift() + j, s.quarter()) << "," << c.get_num().get_str() << "," << c.get_den().get_str()
               << "\n";
        }
    } else {
        os << s.to_string() << "\n";
    }
}

void write_laurent(std::ostream &os, const VLaurent &p, const std::string &format)
{
    if (format == "json") {
        os << to_json(p).dump() << "\n";
    } else if (format == "csv") {
        os << "v_exponent,numerator,denominator\n";
        for (auto &[e, c] : p.terms()) os << e << "," << c.get_num().get_str() << "," << c.get_den().get_str() << "\n";
    } else {
        os << p.to_string() << "\n";
    }
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) throw parse_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string suite_text(const std::string &ref)
{
    const std::string prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0) {
        const std::string name = ref.substr(prefix.size());
        auto it = builtin::suites().find(name);
        if (it == builtin::suites().end()) throw parse_error("no builtin suite '" + name + "'");
        return it->second;
    }
    return read_file(ref);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact q-series tails of colored Jones polynomials and quantum spin networks"};
    app.require_subcommand(1);

    std::string format = "text", out_path;
    const std::set<std::string> formats = {"text", "json", "csv"};

    // series
    auto *series = app.add_subcommand("series", "Print a named series");
    std::string series_name;
    int order = 20;
    std::map<std::string, int> param_values;
    series->add_option("name", series_name, "Registered series name")->required();
    series->add_option("-N,--order", order, "Expand through q^N")->check(CLI::NonNegativeNumber);
    series->add_option("--format", format)->check(CLI::IsMember(formats));
    series->add_option("--out", out_path, "Write to a file instead of stdout");
    std::set<std::string> param_names;
    for (auto &[name, e] : series_registry())
        for (auto &p : e.params) param_names.insert(p.name);
    for (auto &p : param_names)
        series->add_option_function<int>("--" + p, [&param_values, p](const int &v) { param_values[p] = v; },
                                         "Series parameter");

    // verify
    auto *verify = app.add_subcommand("verify", "Run a verification suite (a file or builtin:<name>)");
    std::string suite_ref;
    int jobs = 1;
    bool slow = false;
    std::optional<int> verify_order;
    verify->add_option("suite", suite_ref, "Suite path or builtin:<name>")->required();
    verify->add_option("-j,--jobs", jobs, "Cases evaluated concurrently")->check(CLI::PositiveNumber);
    verify->add_flag("--slow", slow, "Include cases tagged slow");
    verify->add_option("-N,--order", verify_order, "Override the order of equality cases")->check(CLI::NonNegativeNumber);
    verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--out", out_path, "Also write the JSON report here");

    // jones
    auto *jones = app.add_subcommand("jones", "Colored Jones polynomial of the (2, f) torus knot");
    int f = 0, n = 0;
    bool normalized = false;
    std::optional<int> jones_order;
    jones->add_option("--f", f, "Number of half twists")->required();
    jones->add_option("--n", n, "Color")->required();
    jones->add_flag("--normalized", normalized, "Print the normalized q-series");
    jones->add_option("-N,--order", jones_order, "Expand through q^N (normalized only)")->check(CLI::NonNegativeNumber);
    jones->add_option("--format", format)->check(CLI::IsMember(formats));
    jones->add_option("--out", out_path);

    // oracle
    auto *oracle = app.add_subcommand("oracle", "Evaluate the bracket of a closed network file");
    std::string net_path;
    OracleLimits limits;
    oracle->add_option("network", net_path, "Network file")->required();
    oracle->add_option("--max-color", limits.max_color);
    oracle->add_option("--max-crossings", limits.max_crossings);
    oracle->add_option("--max-boundary", limits.max_boundary);
    oracle->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    oracle->add_option("--out", out_path);

    // list
    auto *list = app.add_subcommand("list", "List series, generators, oracle checks and builtin suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*series) {
            const QSeries s = named_series(series_name, param_values, order);
            Output out(out_path);
            write_series(out.stream(), s, format);
            return 0;
        }
        if (*verify) {
            const Suite suite = parse_suite(suite_text(suite_ref));
            const SuiteResult res = run_suite(suite, {jobs, slow, verify_order});
            const json report = res.to_json();
            if (!out_path.empty()) {
                Output out(out_path);
                out.stream() << report.dump(2) << "\n";
            }
            if (format == "json") {
                std::cout << report.dump(2) << "\n";
            } else {
                for (auto &c : res.cases) {
                    std::string tag = c.status == "pass" ? "PASS " : c.status == "fail" ? "FAIL " : "ERROR";
                    std::cout << tag << " " << c.id << ": " << c.detail << "\n";
                }
                std::cout << suite.name << ": " << res.count("pass") << " passed, " << res.count("fail") << " failed, "
                          << res.count("error") << " errors, " << res.skipped << " skipped\n";
            }
            return res.exit_code();
        }
        if (*jones) {
            const VLaurent p = colored_jones_torus(f, n);
            Output out(out_path);
            if (normalized) {
                const int span = (p.max_exponent() - p.min_exponent()) / 4;
                write_series(out.stream(), normalize(p, jones_order.value_or(span)), format);
            } else {
                write_laurent(out.stream(), p, format);
            }
            return 0;
        }
        if (*oracle) {
            const ClosedNetwork net = parse_network(read_file(net_path));
            const VRational b = bracket_closed(net, limits);
            Output out(out_path);
            if (format == "json") out.stream() << to_json(b).dump() << "\n";
            else out.stream() << b.to_string() << "\n";
            return 0;
        }
        if (*list) {
            std::cout << "series:\n";
            for (auto &[name, e] : series_registry()) {
                std::cout << "  " << name;
                for (auto &p : e.params) std::cout << " --" << p.name << (p.fallback ? "=" + std::to_string(*p.fallback) : "");
                std::cout << "    " << e.help << "\n";
            }
            std::cout << "generators:\n";
            for (auto &[name, e] : generator_registry()) std::cout << "  " << name << "    " << e.help << "\n";
            std::cout << "oracle checks:\n";
            for (auto &[name, c] : oracle_checks()) std::cout << "  " << name << "\n";
            std::cout << "builtin suites:\n";
            for (auto &[name, s] : builtin::suites()) std::cout << "  builtin:" << name << "\n";
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "qtail: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
