// Command line front end for the marked quiver setting engine.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsing/classify.hpp"
#include "qsing/fingerprint.hpp"
#include "qsing/io.hpp"
#include "qsing/moduli.hpp"
#include "qsing/reduction.hpp"

namespace {

using nlohmann::json;
using namespace qsing;

json setting_to_json(const MarkedQuiverSetting& s) {
  const auto c = canonical_form(s);
  json arrows = json::array(), loops = json::array();
  for (int i = 0; i < c.vertex_count(); ++i) {
    for (int j = 0; j < c.vertex_count(); ++j)
      if (i != j && c.arrow(i, j) > 0)
        arrows.push_back({i + 1, j + 1, c.arrow(i, j)});
    if (c.loops(i) > 0)
      loops.push_back({i + 1, c.unmarked_loops(i), c.marked_loops(i)});
  }
  return {{"vertices", c.vertex_count()},
          {"alpha", c.dims()},
          {"arrows", arrows},
          {"loops", loops}};
}

MarkedQuiverSetting load_setting(const std::string& path) {
  return parse_setting(read_file(path));
}

int run(int argc, char** argv) {
  CLI::App app{"exact engine for marked quiver settings"};
  app.require_subcommand(1);

  std::string file, file2, type_text, format = "text";
  bool trace = false, dot = false;
  bool has_seed = false;
  unsigned long long seed = 0;
  int dim_arg = 0;

  auto* cmd_dim = app.add_subcommand("dim", "quotient dimension of a setting");
  cmd_dim->add_option("file", file)->required();

  auto* cmd_reduce = app.add_subcommand("reduce", "reduce a setting to its normal form");
  cmd_reduce->add_option("file", file)->required();
  cmd_reduce->add_flag("--trace", trace, "print the move trace");
  cmd_reduce->add_option("--seed", seed, "randomize the move order")
      ->each([&](const std::string&) { has_seed = true; });

  auto* cmd_smooth = app.add_subcommand("smooth", "decide smoothness of the quotient");
  cmd_smooth->add_option("file", file)->required();

  auto* cmd_classify =
      app.add_subcommand("classify", "list reduced singularities of a dimension");
  cmd_classify->add_option("--dim", dim_arg, "quotient dimension")->required();
  cmd_classify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* cmd_fp = app.add_subcommand("fingerprint", "Hasse diagram of singular strata");
  cmd_fp->add_option("file", file)->required();
  cmd_fp->add_flag("--dot", dot, "emit DOT instead of text");

  auto* cmd_equiv = app.add_subcommand("equiv", "compare two singular settings");
  cmd_equiv->add_option("file1", file)->required();
  cmd_equiv->add_option("file2", file2)->required();

  auto* cmd_types = app.add_subcommand("types", "list representation types");
  cmd_types->add_option("file", file)->required();

  auto* cmd_local = app.add_subcommand("local", "local quiver of a representation type");
  cmd_local->add_option("file", file)->required();
  cmd_local->add_option("--type", type_text, "serialized representation type")->required();

  CLI11_PARSE(app, argc, argv);

  if (cmd_dim->parsed()) {
    std::cout << quotient_dimension(load_setting(file)) << '\n';
  } else if (cmd_reduce->parsed()) {
    const auto s = load_setting(file);
    const auto out = has_seed ? reduce_with_order(s, seed) : reduce(s);
    std::cout << emit_setting(out.setting);
    std::cout << "z=" << out.z << '\n';
    if (trace) std::cout << format_trace(out.trace);
  } else if (cmd_smooth->parsed()) {
    std::cout << (is_smooth(load_setting(file)) ? "smooth" : "singular") << '\n';
  } else if (cmd_classify->parsed()) {
    const auto classes = [&] {
      auto table = ClassificationTable::up_to(dim_arg);
      return table.classes(dim_arg);
    }();
    if (format == "json") {
      json out = {{"dim", dim_arg}, {"classes", json::array()}};
      for (const auto& c : classes) {
        json jc = {{"id", c.id},
                   {"aliases", c.aliases},
                   {"setting", setting_to_json(c.setting)}};
        jc["isolated"] = c.isolated ? json(*c.isolated) : json(nullptr);
        out["classes"].push_back(std::move(jc));
      }
      std::cout << out.dump(2) << '\n';
    } else {
      std::cout << format_classification(classes);
    }
  } else if (cmd_fp->parsed()) {
    const auto s = load_setting(file);
    const auto table = ClassificationTable::up_to(quotient_dimension(s) - 1);
    const auto f = fingerprint(s, table);
    std::cout << (dot ? fingerprint_dot(f) : format_fingerprint(f));
  } else if (cmd_equiv->parsed()) {
    const auto a = load_setting(file), b = load_setting(file2);
    const int d = std::max(quotient_dimension(a), quotient_dimension(b));
    const auto table = ClassificationTable::up_to(d - 1);
    const auto r = equivalent(a, b, table);
    std::cout << to_string(r.verdict) << " (" << r.reason << ")\n";
  } else if (cmd_types->parsed()) {
    for (const auto& t : representation_types(load_setting(file)))
      std::cout << to_string(t) << '\n';
  } else if (cmd_local->parsed()) {
    const auto s = load_setting(file);
    const auto tau = parse_representation_type(type_text);
    const auto res = local_quiver(s, tau);
    std::cout << emit_setting(res.setting);
    std::cout << "stratum_dim=" << res.stratum_dim << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qsing::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
