#include "mscs/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "mscs/acceptance.hpp"
#include "mscs/correlation.hpp"
#include "mscs/document.hpp"
#include "mscs/pmepr.hpp"
#include "mscs/random_params.hpp"

namespace mscs {

namespace {

using nlohmann::json;

/// "2,3;1" -> {{2,3},{1}}; blocks separated by ';', entries by ','.
std::vector<std::vector<std::int64_t>> parse_block_lists(std::string const& s) {
  std::vector<std::vector<std::int64_t>> out;
  std::stringstream blocks{s};
  std::string block;
  while (std::getline(blocks, block, ';')) {
    auto& row = out.emplace_back();
    std::stringstream entries{block};
    std::string entry;
    while (std::getline(entries, entry, ',')) {
      if (entry.empty())
        continue;
      try {
        std::size_t used = 0;
        row.push_back(std::stoll(entry, &used));
        if (used != entry.size())
          throw std::invalid_argument{entry};
      } catch (std::logic_error const&) {
        throw parameter_error{"malformed integer list '" + s + "'"};
      }
    }
  }
  return out;
}

struct GenerateFlags {
  std::string construction;
  std::string params_file;
  int modulus = 0;
  std::vector<int> p, m, s;
  std::vector<std::int64_t> constant;
  std::string perm, linear, head;
  std::optional<int> ext_p;
  std::int64_t ext_linear = 0;
  std::int64_t ext_const = 0;
  bool random = false;
  std::uint64_t seed = 0;
  bool verify = false;
  std::string output = "-";
};

template <class T>
T pick(std::vector<T> const& v, std::size_t i, T fallback) {
  if (v.empty())
    return fallback;
  if (v.size() == 1)
    return v.front();
  if (i >= v.size())
    throw parameter_error{"per-block flag lists must match the number of "
                          "primes"};
  return v[i];
}

Construction construction_from_flags(GenerateFlags const& f) {
  if (f.modulus == 0)
    throw parameter_error{"--lambda is required"};
  if (f.p.empty())
    throw parameter_error{"--p is required"};
  if (f.m.empty())
    throw parameter_error{"--m is required"};
  auto const perms = parse_block_lists(f.perm);
  auto const linears = parse_block_lists(f.linear);
  auto const heads = parse_block_lists(f.head);

  std::vector<PrimeBlockParams> blocks;
  for (std::size_t a = 0; a < f.p.size(); ++a) {
    PrimeBlockParams b;
    b.p = f.p[a];
    b.m = pick(f.m, a, 1);
    b.s = pick(f.s, a, 1);
    b.permutation = a < perms.size() ? std::vector<int>(perms[a].begin(),
                                                        perms[a].end())
                                     : identity_permutation(b.s, b.m);
    if (a < linears.size())
      b.linear = linears[a];
    if (a < heads.size())
      b.head_table = heads[a];
    b.constant = pick(f.constant, a, std::int64_t{0});
    blocks.push_back(std::move(b));
  }

  auto kind = f.construction;
  if (kind.empty())
    kind = f.ext_p ? "theorem3" : blocks.size() == 1 ? "theorem1" : "theorem2";
  if (kind == "theorem1") {
    if (blocks.size() != 1)
      throw parameter_error{"theorem1 takes exactly one prime"};
    return Theorem1Params{f.modulus, blocks.front()};
  }
  Theorem2Params multi{f.modulus, std::move(blocks), false};
  if (kind == "theorem2")
    return multi;
  if (kind == "theorem3") {
    if (!f.ext_p)
      throw parameter_error{"theorem3 needs --ext-p"};
    return Theorem3Params{std::move(multi),
                          ExtensionParams{*f.ext_p, f.ext_linear, f.ext_const}};
  }
  throw parameter_error{"unknown construction '" + kind + "'"};
}

Construction load_params_file(std::string const& path) {
  std::ifstream in{path};
  if (!in)
    throw document_error{"cannot open '" + path + "'"};
  json j;
  try {
    j = json::parse(in);
  } catch (json::parse_error const& e) {
    throw document_error{std::string{"parse error: "} + e.what()};
  }
  return construction_from_json(j);
}

std::vector<CorrelationReport> verify_all(SequenceSet const& set,
                                          std::vector<Claim> const& claims,
                                          VerifyOptions const& options) {
  std::vector<CorrelationReport> reports;
  for (auto const& c : claims)
    reports.push_back(verify_claim(set, c, options));
  return reports;
}

std::string claim_label(Claim const& c) {
  switch (c.kind) {
    case ClaimKind::gcs:
      return "GCS";
    case ClaimKind::mscs:
      return "MSCS S=" + std::to_string(c.value);
    case ClaimKind::type2_zcs:
      return "ZCS Z=" + std::to_string(c.value);
  }
  return "?";
}

void print_report_text(CorrelationReport const& r, std::ostream& out) {
  out << "claim " << claim_label(r.claim) << ": "
      << (r.passed ? "PASS" : "FAIL") << " (" << r.shifts.size()
      << " shifts tested, " << (r.numerical ? "numerical" : "exact") << ")\n";
  if (!r.failing_shifts.empty()) {
    out << "  failing shifts:";
    for (auto t : r.failing_shifts)
      out << ' ' << t;
    out << '\n';
  }
}

json report_json(CorrelationReport const& r) {
  json shifts = json::array();
  for (auto const& v : r.shifts)
    shifts.push_back(
      {{"shift", v.shift}, {"zero", v.zero}, {"magnitude", v.magnitude}});
  return {{"kind", to_string(r.claim.kind)},
          {"value", r.claim.value},
          {"passed", r.passed},
          {"numerical", r.numerical},
          {"failing_shifts", r.failing_shifts},
          {"shifts", shifts}};
}

int cmd_generate(GenerateFlags const& f, std::ostream& out,
                 std::ostream& err) {
  auto c = f.params_file.empty() ? construction_from_flags(f)
                                 : load_params_file(f.params_file);
  if (f.random) {
    Rng rng{f.seed};
    c = std::visit([&](auto p) -> Construction { return randomize(rng, p); },
                   c);
  }
  auto doc = make_document(c);
  if (f.verify) {
    for (auto const& r : verify_all(doc.set, doc.set.metadata().claims, {})) {
      if (!r.passed) {
        err << "error: constructed set fails its claim "
            << claim_label(r.claim) << '\n';
        return exit_verification_failed;
      }
    }
  }
  if (f.output == "-")
    out << serialize(doc);
  else
    write_document(doc, f.output);
  return exit_ok;
}

struct VerifyFlags {
  std::string input;
  std::string claim;
  std::size_t value = 0;
  std::string format = "text";
  bool early_exit = false;
};

int cmd_verify(VerifyFlags const& f, std::ostream& out, std::ostream& err) {
  auto const doc = read_document(f.input);
  std::vector<Claim> claims;
  if (!f.claim.empty()) {
    auto kind = claim_kind_from_string(f.claim);
    std::size_t value = f.value;
    if (kind == ClaimKind::gcs)
      value = 1;
    if (value == 0)
      throw parameter_error{"--value is required for " + f.claim};
    claims.push_back({kind, value});
  } else {
    claims = doc.set.metadata().claims;
  }
  if (claims.empty()) {
    err << "error: document carries no claim; pass --claim\n";
    return exit_usage;
  }
  auto const reports = verify_all(doc.set, claims, {f.early_exit});
  bool ok = true;
  for (auto const& r : reports)
    ok = ok && r.passed;
  if (f.format == "json") {
    json j{{"passed", ok}, {"claims", json::array()}};
    for (auto const& r : reports)
      j["claims"].push_back(report_json(r));
    out << j.dump(2) << '\n';
  } else {
    for (auto const& r : reports)
      print_report_text(r, out);
  }
  return ok ? exit_ok : exit_verification_failed;
}

struct PmeprFlags {
  std::string input;
  std::size_t oversampling = default_oversampling;
  std::string iapr_out;
  std::size_t shift = 0;
};

std::optional<std::size_t> bound_shift(SetDocument const& doc,
                                       std::size_t override_shift) {
  if (override_shift > 0)
    return override_shift;
  for (auto const& c : doc.set.metadata().claims)
    if (c.kind == ClaimKind::mscs)
      return c.value;
  for (auto const& c : doc.set.metadata().claims)
    if (c.kind == ClaimKind::gcs)
      return 1;
  return std::nullopt;
}

void write_iapr(SequenceSet const& set, std::size_t oversampling,
                std::string const& path) {
  std::vector<std::vector<double>> curves;
  for (auto const& s : set.sequences())
    curves.push_back(iapr_curve(s, oversampling));
  std::ofstream csv{path};
  if (!csv)
    throw document_error{"cannot open '" + path + "' for writing"};
  csv << "# df_t";
  for (std::size_t i = 0; i < set.size(); ++i)
    csv << ",seq" << i;
  csv << '\n' << std::setprecision(17);
  auto const n = curves.front().size();
  for (std::size_t j = 0; j < n; ++j) {
    csv << static_cast<double>(j) / static_cast<double>(n);
    for (auto const& c : curves)
      csv << ',' << c[j];
    csv << '\n';
  }
}

int cmd_pmepr(PmeprFlags const& f, std::ostream& out, std::ostream& err) {
  if (f.oversampling < 1)
    throw parameter_error{"--oversampling must be >= 1"};
  auto const doc = read_document(f.input);
  auto const& set = doc.set;
  auto const shift = bound_shift(doc, f.shift);
  auto const report = pmepr_set(set, shift.value_or(1), f.oversampling);

  out << std::setprecision(10);
  for (std::size_t i = 0; i < set.size(); ++i)
    out << "sequence " << i << ": PMEPR " << report.per_sequence[i] << '\n';
  out << "set PMEPR " << report.set_pmepr << " (oversampling "
      << f.oversampling << ")\n";
  if (!f.iapr_out.empty())
    write_iapr(set, f.oversampling, f.iapr_out);

  if (!shift) {
    out << "bound: none (no MSCS or GCS claim)\n";
    return exit_ok;
  }
  out << "bound M*S = " << report.bound << " (M=" << set.size()
      << ", S=" << *shift << "): "
      << (report.bound_satisfied ? "satisfied" : "VIOLATED") << '\n';
  if (report.bound_satisfied)
    return exit_ok;
  if (verify_mscs(set, *shift).passed)
    err << "error: inconsistency: verified MSCS exceeds its PMEPR bound\n";
  else
    err << "error: set is not an MSCS with S=" << *shift
        << "; bound does not apply\n";
  return exit_verification_failed;
}

int cmd_selftest(bool full, std::ostream& out) {
  auto const options = full ? AcceptanceOptions{} : AcceptanceOptions::reduced();
  auto const results = run_acceptance(options, &out);
  if (all_passed(results)) {
    out << "selftest: all criteria passed\n";
    return exit_ok;
  }
  for (auto const& r : results)
    if (!r.passed)
      out << "selftest: FAILED criterion " << r.id << " (" << r.name << ")\n";
  return exit_verification_failed;
}

} // namespace

int run_cli(std::vector<std::string> const& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Construct and verify multiple shift complementary sets",
               "mscs"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "build a sequence set");
  generate->add_option("--construction", gen.construction,
                       "theorem1 | theorem2 | theorem3");
  generate->add_option("--params", gen.params_file,
                       "JSON parameter file (keys mirror the flags)");
  generate->add_option("--lambda", gen.modulus, "alphabet size lambda");
  generate->add_option("-p,--p", gen.p, "prime per block")->delimiter(',');
  generate->add_option("-m,--m", gen.m, "exponent per block")->delimiter(',');
  generate->add_option("-s,--s", gen.s, "s per block")->delimiter(',');
  generate->add_option("--perm", gen.perm,
                       "permutation of {s..m}, blocks separated by ';'");
  generate->add_option("--linear", gen.linear,
                       "g_1..g_m, blocks separated by ';'");
  generate->add_option("--const", gen.constant, "constant g per block")
    ->delimiter(',');
  generate->add_option("--head", gen.head,
                       "head table (p^(s-1) entries), blocks separated by ';'");
  generate->add_option("--ext-p", gen.ext_p, "extension prime");
  generate->add_option("--ext-linear", gen.ext_linear,
                       "extension linear coefficient");
  generate->add_option("--ext-const", gen.ext_const, "extension constant");
  generate->add_flag("--random", gen.random,
                     "draw pi, coefficients and head tables from --seed");
  generate->add_option("--seed", gen.seed, "seed for --random");
  generate->add_flag("--verify", gen.verify,
                     "verify the claims exactly before writing");
  generate->add_option("-o,--output", gen.output, "output path, '-' = stdout");

  VerifyFlags ver;
  auto* verify = app.add_subcommand("verify", "check a set's claims exactly");
  verify->add_option("input", ver.input, "set document")->required();
  verify->add_option("--claim", ver.claim, "GCS | MSCS | ZCS");
  verify->add_option("--value", ver.value, "S for MSCS, Z for ZCS");
  verify->add_option("--format", ver.format, "text | json")
    ->check(CLI::IsMember({"text", "json"}));
  verify->add_flag("--early-exit", ver.early_exit,
                   "stop at the first failing shift");

  PmeprFlags pm;
  auto* pmepr_cmd = app.add_subcommand("pmepr", "PMEPR and IAPR curves");
  pmepr_cmd->add_option("input", pm.input, "set document")->required();
  pmepr_cmd->add_option("--oversampling", pm.oversampling,
                        "envelope samples per subcarrier spacing");
  pmepr_cmd->add_option("--iapr-out", pm.iapr_out, "CSV of IAPR curves");
  pmepr_cmd->add_option("--shift", pm.shift, "override S for the bound");

  bool full = false;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_flag("--full", full, "full scale instead of reduced");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return exit_ok;
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (generate->parsed())
      return cmd_generate(gen, out, err);
    if (verify->parsed())
      return cmd_verify(ver, out, err);
    if (pmepr_cmd->parsed())
      return cmd_pmepr(pm, out, err);
    if (selftest->parsed())
      return cmd_selftest(full, out);
  } catch (std::exception const& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

} // namespace mscs
