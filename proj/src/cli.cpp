#include "orbivfc/cli.hpp"

#include "orbivfc/euler.hpp"
#include "orbivfc/instances.hpp"
#include "orbivfc/invariants.hpp"
#include "orbivfc/io.hpp"
#include "orbivfc/perturb.hpp"
#include "orbivfc/resolution.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>

namespace orbivfc::cli {

namespace {

struct CheckFailed {};

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("ORBIVFC_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidInput("ORBIVFC_SEED is not an unsigned integer");
    }
  }
  return flag;
}

struct Loaded {
  EquivariantBundle bundle;
  std::optional<Multisection> section;
};

/// Built-in instance names or a bundle file with an optional sibling .ms file.
Loaded load_instance(const std::string& name, const std::string& section_path, std::uint64_t seed) {
  std::smatch m;
  Loaded out;
  if (std::filesystem::exists(name)) {
    out.bundle = io::parse_bundle(io::read_file(name));
    std::string ms = section_path;
    if (ms.empty()) {
      auto sib = std::filesystem::path(name).replace_extension(".ms");
      if (std::filesystem::exists(sib)) ms = sib.string();
    }
    if (!ms.empty()) out.section = io::parse_multisection(io::read_file(ms));
  } else if (std::regex_match(name, m, std::regex("football_(\\d+)_(\\d+)"))) {
    const int a = std::stoi(m[1]), b = std::stoi(m[2]);
    out.bundle = football_bundle(a, b);
    out.section = football_section(a, b);
  } else if (std::regex_match(name, m, std::regex("sphere_(\\d+)"))) {
    const int k = std::stoi(m[1]);
    out.bundle = single_chart_bundle(sphere_tangent_chart(k));
    out.section = generic_sphere_field(k, seed);
  } else if (std::regex_match(name, m, std::regex("torus_(\\d+)"))) {
    out.bundle = single_chart_bundle(torus_trivial_chart(std::stoi(m[1]), 2));
  } else {
    throw InvalidInput("no such file or built-in instance: " + name);
  }
  if (!section_path.empty() && !out.section) out.section = io::parse_multisection(io::read_file(section_path));
  return out;
}

Multisection generic_section(const EquivariantBundle& e, std::uint64_t seed) {
  auto z = zero_multisection(e);
  return perturb_relative(e, z, z, generating_basis(e, {}), seed).multisection;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

void print_dgs_report(const DgsReport& r, std::ostream& out) {
  constexpr std::size_t shown = 8;
  for (std::size_t i = 0; i < r.failures.size() && i < shown; ++i)
    out << "fail " << r.failures[i].condition << " " << r.failures[i].message << "\n";
  if (r.failures.size() > shown) out << "... " << r.failures.size() - shown << " more failures\n";
  for (auto& n : r.notes) out << "note " << n << "\n";
}

/// Checks shared by check-dgs and shrink; returns whether everything passed.
bool report_dgs(const DGS& d, const DgsReport& validation, bool tangent, std::ostream& out) {
  print_dgs_report(validation, out);
  out << "validation: " << (validation.ok() ? "pass" : "fail") << "\n";
  bool ok = validation.ok();
  if (validation.ok()) {
    auto th = build_thickening(d);
    out << "thickening: " << th.points.size() << " points, " << th.num_classes << " classes, transitivity cases "
        << th.axioms.cases[0] << "/" << th.axioms.cases[1] << "/" << th.axioms.cases[2] << "\n";
    for (auto& f : th.axioms.failures) out << "fail thickening " << f << "\n";
    out << "equivalence axioms: " << (th.axioms.ok() ? "pass" : "fail") << "\n";
    ok = ok && th.axioms.ok();
  }
  auto h = hausdorff_check(d);
  print_dgs_report(h, out);
  out << "hausdorff: " << (h.ok() ? "pass" : "fail") << "\n";
  ok = ok && h.ok();
  if (tangent) {
    try {
      auto t = tangent_condition(d);
      print_dgs_report(t, out);
      out << "tangent: " << (t.ok() ? "pass" : "fail") << "\n";
      ok = ok && t.ok();
    } catch (const InvalidInput& e) {
      out << "tangent: not evaluated (" << e.what() << ")\n";
      ok = false;
    }
  }
  return ok;
}

std::vector<long long> parse_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw InvalidInput("bad list entry '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact orbifold Euler classes, resolutions and Kuranishi checks", "orbivfc"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Random seed; ORBIVFC_SEED overrides it");
  app.fallthrough();

  std::string path, section, emit_path;
  int genus = 0, marks = 0, max_vertices = 1, n = 0;
  long long c1 = 0, chi = 0, number = 0;
  std::string mults;
  bool tangent = false;
  std::vector<std::string> drops;

  auto* c_genus = app.add_subcommand("genus", "Arithmetic genus of a dual graph");
  c_genus->add_option("graph", path)->required();
  auto* c_stab = app.add_subcommand("stabilize", "Collapse unstable components of a dual graph");
  c_stab->add_option("graph", path)->required();
  auto* c_strata = app.add_subcommand("strata", "Enumerate stable dual graphs");
  c_strata->add_option("--genus", genus)->required();
  c_strata->add_option("--marks", marks)->required();
  c_strata->add_option("--max-vertices", max_vertices)->required();
  auto* c_vdim = app.add_subcommand("vdim", "Virtual dimension");
  c_vdim->add_option("--n", n)->required();
  c_vdim->add_option("--genus", genus)->required();
  c_vdim->add_option("--marks", marks)->required();
  c_vdim->add_option("--c1", c1);
  auto* c_rr = app.add_subcommand("rr", "Riemann-Roch index");
  c_rr->add_option("--n", n)->required();
  c_rr->add_option("--genus", genus)->required();
  c_rr->add_option("--c1", c1)->required();
  auto* c_euler = app.add_subcommand("euler", "Rational Euler class of a bundle and multisection");
  c_euler->add_option("instance", path)->required();
  c_euler->add_option("--section", section);
  auto* c_resolve = app.add_subcommand("resolve", "Resolution of a multisection and its weight relation");
  c_resolve->add_option("instance", path)->required();
  c_resolve->add_option("--section", section);
  auto* c_perturb = app.add_subcommand("perturb", "Transversal perturbation of a section");
  c_perturb->add_option("instance", path)->required();
  c_perturb->add_option("--section", section);
  c_perturb->add_option("--emit", emit_path);
  auto* c_check = app.add_subcommand("check-dgs", "Validate a derived global system");
  c_check->add_option("dgs", path)->required();
  c_check->add_flag("--tangent", tangent, "Also check the tangent condition");
  auto* c_shrink = app.add_subcommand("shrink", "Shrink a derived global system and revalidate");
  c_shrink->add_option("dgs", path)->required();
  c_shrink->add_option("--drop", drops, "level:v0,v1,... removes the closed simplex from Y(level)");
  c_shrink->add_option("--emit", emit_path);
  auto* c_deg0 = app.add_subcommand("gw-deg0", "Degree-zero invariant of a Calabi-Yau threefold");
  c_deg0->add_option("--chi", chi)->required();
  c_deg0->add_option("--genus", genus)->required();
  auto* c_ell = app.add_subcommand("gw-elliptic", "Fiber-class invariant of an elliptic surface");
  c_ell->add_option("--genus", genus)->required();
  c_ell->add_option("--mult", mults);
  auto* c_rho = app.add_subcommand("rho", "Sum of divisors");
  c_rho->add_option("m", number)->required();
  auto* c_bern = app.add_subcommand("bernoulli", "Bernoulli number");
  c_bern->add_option("n", number)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    const std::uint64_t s = effective_seed(seed);
    if (*c_genus) {
      out << graph::genus(io::parse_graph(io::read_file(path))) << "\n";
    } else if (*c_stab) {
      out << io::serialize(graph::stabilize(io::parse_graph(io::read_file(path))));
    } else if (*c_strata) {
      auto gs = graph::enumerate_strata(genus, marks, max_vertices);
      out << gs.size() << " graphs\n";
      for (auto& g : gs) out << io::summary(g) << "\n";
    } else if (*c_vdim) {
      out << graph::virtual_dim(n, genus, marks, c1) << "\n";
    } else if (*c_rr) {
      out << graph::riemann_roch_index(n, genus, c1) << "\n";
    } else if (*c_euler) {
      auto in = load_instance(path, section, s);
      auto ms = in.section ? *in.section : generic_section(in.bundle, s);
      validate(in.bundle, ms);
      if (!is_transversal(in.bundle, ms).ok) {
        out << "not transversal\n";
        return 1;
      }
      auto chain = euler_cycle(in.bundle, ms);
      if (chain.degree() == 0) {
        out << to_string(euler_number(chain)) << "\n";
      } else {
        out << "cycle of degree " << chain.degree() << " with " << chain.terms().size()
            << " simplices, boundary zero\n";
      }
    } else if (*c_resolve) {
      auto in = load_instance(path, section, s);
      auto ms = in.section ? *in.section : generic_section(in.bundle, s);
      auto res = build_resolution(in.bundle, normalize(ms));
      for (std::size_t c = 0; c < res.charts.size(); ++c) {
        const auto& r = res.charts[c];
        out << "chart " << c << ": total " << r.total << ", levels";
        for (auto& l : r.levels) out << " " << l.value << "(" << l.sheets.size() << " simplices)";
        out << "\n";
      }
      auto w = check_weight_relation(in.bundle, res);
      out << "weight relation: " << (w.ok ? "pass" : "fail") << " (" << w.relations_checked << " relations)\n";
      if (!w.ok) return 1;
    } else if (*c_perturb) {
      auto in = load_instance(path, section, s);
      auto base = in.section ? *in.section : zero_multisection(in.bundle);
      auto z = zero_multisection(in.bundle);
      auto p = perturb_relative(in.bundle, base, z, generating_basis(in.bundle, {}), s);
      emit(emit_path, io::serialize(p.multisection), out);
    } else if (*c_check) {
      auto d = io::parse_dgs(io::read_file(path));
      if (!report_dgs(d, validate(d), tangent, out)) return 1;
    } else if (*c_shrink) {
      auto d = io::parse_dgs(io::read_file(path));
      std::vector<std::vector<bool>> choice;
      for (auto& l : d.levels) choice.push_back(l.open);
      for (auto& spec : drops) {
        auto colon = spec.find(':');
        if (colon == std::string::npos) throw InvalidInput("--drop expects level:v0,v1,...");
        const int level = static_cast<int>(parse_list(spec.substr(0, colon)).at(0));
        const int p = d.position(level);
        if (p < 0) throw InvalidInput("no level " + std::to_string(level));
        Simplex sx;
        for (auto v : parse_list(spec.substr(colon + 1))) sx.push_back(static_cast<int>(v));
        std::sort(sx.begin(), sx.end());
        const auto& k = d.levels[p].chart.bundle.action.complex;
        auto idx = k.find(sx);
        if (!idx) throw InvalidInput("no simplex " + spec);
        std::vector<bool> closed(k.size(), false);
        closed[*idx] = true;
        closed = closure(k, closed);
        for (int c = 0; c < k.size(); ++c)
          if (closed[c]) choice[p][c] = false;
      }
      auto res = shrink(d, choice);
      const bool ok = report_dgs(res.dgs, res.report, false, out);
      if (!emit_path.empty()) emit(emit_path, io::serialize(res.dgs), out);
      if (!ok) return 1;
    } else if (*c_deg0) {
      out << to_string(invariants::deg0_gw(chi, genus)) << "\n";
    } else if (*c_ell) {
      invariants::EllipticFibrationData data;
      data.base_genus = genus;
      data.multiplicities = parse_list(mults);
      out << to_string(invariants::elliptic_N1(data)) << "\n";
    } else if (*c_rho) {
      out << invariants::divisor_sum(number) << "\n";
    } else if (*c_bern) {
      out << to_string(invariants::bernoulli(static_cast<int>(number))) << "\n";
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace orbivfc::cli
