#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "mobiuscf/mobiuscf.hpp"

using namespace mcf;

namespace {

Mat2 parse_lft(const std::string& text) {
  std::vector<Integer> parts;
  std::string cur;
  std::stringstream ss(text);
  while (std::getline(ss, cur, ',')) {
    auto b = cur.find_first_not_of(" \t");
    if (b == std::string::npos) throw ParseError(0, "matrix entry is empty");
    auto e = cur.find_last_not_of(" \t");
    try {
      parts.emplace_back(cur.substr(b, e - b + 1));
    } catch (const std::exception&) {
      throw ParseError(0, "bad matrix entry '" + cur + "'");
    }
  }
  if (parts.size() != 4)
    throw ParseError(0, "matrix wants 4 comma separated entries, row major");
  return {parts[0], parts[1], parts[2], parts[3]};
}

void print_digits(const std::vector<Integer>& ds) {
  for (std::size_t i = 0; i < ds.size(); ++i)
    std::cout << (i ? " " : "") << ds[i];
  std::cout << "\n";
}

std::string compact(const Mat2& m) {
  return "[[" + m.a.str() + "," + m.b.str() + "],[" + m.c.str() + "," + m.d.str() + "]]";
}

DecompCase parse_case(const std::string& name) {
  if (name == "TM") return DecompCase::M;
  if (name == "TMR") return DecompCase::MR;
  if (name == "TMRJ") return DecompCase::MRJ;
  throw ParseError(0, "case must be one of TM, TMR, TMRJ");
}

std::string word_str(const RLWord& w) {
  if (w.empty()) return "(empty)";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += w[i].letter;
    if (w[i].exp != 1) out += "^" + w[i].exp.str();
  }
  return out;
}

void print_report(const VerificationReport& rep, bool as_json) {
  if (as_json) {
    std::cout << to_json(rep).dump(2) << "\n";
    return;
  }
  std::cout << rep.branch << ": p in [" << rep.lo << ", " << rep.hi << "], " << rep.passes
            << " passed, " << rep.failures.size() << " failed";
  if (rep.threshold) std::cout << ", threshold " << *rep.threshold;
  if (rep.shift) std::cout << ", shift " << *rep.shift;
  std::cout << "\n";
  std::size_t shown = 0;
  for (const auto& f : rep.failures) {
    if (++shown > 10) {
      std::cout << "  ... " << rep.failures.size() - 10 << " more\n";
      break;
    }
    std::cout << "  p=" << f.index << "  got " << f.lhs << "  want " << f.rhs << "\n";
  }
}

int run_selftest(unsigned long seed) {
  std::mt19937_64 rng(seed);
  int bad = 0;

  for (IdentityName id : kAllIdentities) {
    for (long h = -9; h <= 9; ++h) {
      IdentityCheck c;
      try {
        c = verify_identity(id, h);
      } catch (const ParityError&) {
        continue;
      }
      if (!c.ok) {
        std::cout << "identity " << identity_name(id) << " fails at h=" << h << "\n";
        ++bad;
      }
    }
  }

  std::uniform_int_distribution<long> entry(-20, 20);
  for (int i = 0; i < 200; ++i) {
    Mat2 s{entry(rng), entry(rng), entry(rng), entry(rng)};
    Integer d = mat_det(s);
    if (d != 2 && d != -2) {
      --i;
      continue;
    }
    Decomposition dec = decompose(s);
    if (!(dec.t * decomp_case_matrix(dec.kase) == s)) {
      std::cout << "decompose roundtrip fails on " << s.str() << "\n";
      ++bad;
    }
  }

  for (TailLabel lab : kAllTailLabels) {
    BlockIdentity b = block_identity(lab);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Integer> qs;
      for (const auto& st : b.steps) {
        std::uniform_int_distribution<long> pick(1, 4);
        long q = 2 * pick(rng);
        if (st.parity == Parity::Odd) q -= 1;
        qs.emplace_back(q);
      }
      if (!block_identity_check(lab, qs).ok) {
        std::cout << "block identity " << tail_label_name(lab) << " fails\n";
        ++bad;
      }
    }
  }

  std::uniform_int_distribution<long> num(-999, 999), den(1, 999), me(-9, 9);
  for (int i = 0; i < 100; ++i) {
    Mat2 s{me(rng), me(rng), me(rng), me(rng)};
    if (mat_det(s) == 0) {
      --i;
      continue;
    }
    Rational x(num(rng), den(rng));
    try {
      Rational got = rational_of_cf(apply_lft_cf(s, cf_of_rational(x)));
      if (got != lft_apply(s, x)) {
        std::cout << "stream transform disagrees with direct image on " << x.str() << "\n";
        ++bad;
      }
    } catch (const PoleError&) {
      --i;
      continue;
    }
  }

  if (bad == 0) std::cout << "selftest: all checks passed\n";
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continued fraction transforms under determinant +-2 maps"};
  app.require_subcommand(1);

  std::string cf_text, lft_text;
  std::size_t terms = 32, window = 200, horizon = 400;
  long plo = 3, phi = 30;
  bool want_value = false, as_json = false, check = false, komatsu = false, emit_tail = false;
  long pmax = 20;
  unsigned long seed = 0;
  std::string fam_u = "1", fam_v = "1", fam_a = "1", fam_n = "1", case_name = "TM";

  auto* cmd_expand = app.add_subcommand("expand", "print the first quotients of an expansion");
  cmd_expand->add_option("cf", cf_text, "expansion, e.g. \"[2; 1, 2*k, 1 @ k=1..]\"")->required();
  cmd_expand->add_option("--terms", terms, "how many quotients");
  cmd_expand->add_flag("--value", want_value, "also print the exact value (finite only)");
  cmd_expand->add_flag("--json", as_json, "print the quotients as a JSON array");

  auto* cmd_transform = app.add_subcommand("transform", "apply an integer map to an expansion");
  cmd_transform->add_option("cf", cf_text)->required();
  cmd_transform->add_option("--lft", lft_text, "matrix a,b,c,d acting as (a x + b)/(c x + d)")->required();
  cmd_transform->add_option("--terms", terms);

  auto* cmd_decompose = app.add_subcommand("decompose", "factor a determinant +-2 matrix");
  cmd_decompose->add_option("--lft", lft_text)->required();

  auto* cmd_predict = app.add_subcommand("predict-tail", "predicted image tail and its anchor");
  cmd_predict->add_option("cf", cf_text)->required();
  cmd_predict->add_option("--lft", lft_text)->required();
  cmd_predict->add_option("--horizon", horizon, "digits to expand while aligning");

  auto* cmd_verify = app.add_subcommand("verify", "check predicted structure against the digits");
  cmd_verify->require_subcommand(1);
  auto* ver_tail = cmd_verify->add_subcommand("tail", "digit window against the predicted tail");
  auto* ver_rec = cmd_verify->add_subcommand("recurrence", "two term recurrence on leap convergents");
  auto* ver_leap = cmd_verify->add_subcommand("leaping", "leap convergents against transformed input convergents");
  for (auto* v : {ver_tail, ver_rec, ver_leap}) {
    v->add_option("cf", cf_text)->required();
    v->add_option("--lft", lft_text)->required();
    v->add_option("--horizon", horizon);
    v->add_flag("--json", as_json, "print the report as JSON");
  }
  ver_tail->add_option("--window", window, "how many digits to compare");
  for (auto* v : {ver_rec, ver_leap}) {
    v->add_option("--plo", plo, "first leap index");
    v->add_option("--phi,--pmax", phi, "last leap index");
  }

  auto* cmd_family = app.add_subcommand("family", "classical families with closed form tails");
  cmd_family->require_subcommand(1);
  auto* fam_h = cmd_family->add_subcommand("hurwitz", "quotients a(1+kn), k >= 0");
  fam_h->add_option("-a,--a", fam_a)->required();
  fam_h->add_option("-n,--n", fam_n)->required();
  fam_h->add_flag("--komatsu", komatsu, "check the collapsed M image and its three step leap");
  fam_h->add_option("--pmax", pmax, "leap indices to check");
  auto* fam_t1 = cmd_family->add_subcommand("tasoev1", "quotients u a^k, k >= 1");
  fam_t1->add_option("-u,--u", fam_u)->required();
  fam_t1->add_option("-a,--a", fam_a)->required();
  auto* fam_t2 = cmd_family->add_subcommand("tasoev2", "quotients u a^k, v a^k alternating, k >= 1");
  fam_t2->add_option("-u,--u", fam_u)->required();
  fam_t2->add_option("-v,--v", fam_v)->required();
  fam_t2->add_option("-a,--a", fam_a)->required();
  for (auto* f : {fam_h, fam_t1, fam_t2}) {
    f->add_flag("--check", check, "compare closed tails with the predicted ones");
    f->add_flag("--emit-tail", emit_tail, "print one closed tail and nothing else");
    f->add_option("--case", case_name, "decomposition case the emitted tail belongs to")
        ->check(CLI::IsMember({"TM", "TMR", "TMRJ"}));
    f->add_flag("--json", as_json);
  }

  auto* cmd_selftest = app.add_subcommand("selftest", "quick internal consistency sweep");
  cmd_selftest->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*cmd_expand) {
      QuasiPeriodicCF cf = parse_cf(cf_text);
      std::vector<Integer> ds = qp_evaluate(cf, terms);
      if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Integer& d : ds) arr.push_back(d.str());
        std::cout << arr.dump() << "\n";
      } else {
        print_digits(ds);
      }
      if (want_value) {
        if (!cf.finite()) {
          std::cerr << "value: expansion is not finite\n";
          return 2;
        }
        std::cout << "value = " << rational_of_cf(cf.prefix).str() << "\n";
      }
      return 0;
    }

    if (*cmd_transform) {
      QuasiPeriodicCF cf = parse_cf(cf_text);
      Mat2 s = parse_lft(lft_text);
      print_digits(apply_lft_stream(s, qp_stream(cf)).take(terms));
      return 0;
    }

    if (*cmd_decompose) {
      Mat2 s = parse_lft(lft_text);
      Decomposition dec = decompose(s);
      bool ok = dec.t * decomp_case_matrix(dec.kase) == s;
      std::cout << "case=" << decomp_case_name(dec.kase) << " T=" << compact(dec.t) << "\n";
      std::cout << "det = " << mat_det(s) << ", reconstruction "
                << (ok ? "exact" : "BROKEN") << "\n";
      if (auto w = t_word_if_nonneg(dec.t)) std::cout << "word = " << word_str(*w) << "\n";
      return ok ? 0 : 1;
    }

    if (*cmd_predict) {
      QuasiPeriodicCF cf = parse_cf(cf_text);
      Mat2 s = parse_lft(lft_text);
      LeapingContext ctx = make_context(s, cf, horizon);
      std::cout << "case   = " << decomp_case_name(ctx.kase) << "\n";
      std::cout << "class  = " << cf_class_name(ctx.cls) << "\n";
      std::cout << "shape  = " << tail_label_name(ctx.label) << "\n";
      std::cout << "anchor : k0 = " << ctx.k0 << ", first tail digit at position "
                << ctx.tail_start_pos << ", p0 = " << ctx.p0 << "\n";
      std::cout << "tail   = " << format_cf(ctx.tail) << "\n";
      return 0;
    }

    if (*ver_tail || *ver_rec || *ver_leap) {
      QuasiPeriodicCF cf = parse_cf(cf_text);
      Mat2 s = parse_lft(lft_text);
      LeapingContext ctx = make_context(s, cf, horizon);
      VerificationReport rep;
      if (*ver_tail) rep = verify_tail(ctx, window);
      if (*ver_rec) rep = verify_recurrence(ctx, plo < 4 ? 4 : plo, phi);
      if (*ver_leap) rep = verify_leaping(ctx, plo, phi);
      print_report(rep, as_json);
      return rep.ok() ? 0 : 1;
    }

    if (*fam_h || *fam_t1 || *fam_t2) {
      Integer u(fam_u), v(fam_v), a(fam_a), n(fam_n);
      QuasiPeriodicCF cf;
      CFClass cls;
      if (*fam_h) {
        cf = hurwitz_cf(a, n);
        cls = hurwitz_class(a, n);
      } else if (*fam_t1) {
        cf = tasoev1_cf(u, a);
        cls = tasoev1_class(u, a);
      } else {
        cf = tasoev2_cf(u, v, a);
        cls = tasoev2_class(u, v, a);
      }
      auto closed_tail = [&](TailLabel lab) {
        return *fam_h   ? hurwitz_tail(a, n, lab)
               : *fam_t1 ? tasoev1_tail(u, a, lab)
                         : tasoev2_tail(u, v, a, lab);
      };
      if (emit_tail) {
        std::cout << format_cf(closed_tail(tail_label(cls, parse_case(case_name)))) << "\n";
        return 0;
      }
      std::cout << "cf    = " << format_cf(cf) << "\n";
      std::cout << "class = " << cf_class_name(cls) << "\n";
      bool all_ok = true;
      for (TailLabel lab : kAllTailLabels) {
        if (tail_label_class(lab) != cls) continue;
        std::cout << tail_label_name(lab) << "  ";
        QuasiPeriodicCF closed;
        try {
          closed = closed_tail(lab);
        } catch (const NotApplicable& e) {
          std::cout << "(not applicable: " << e.what() << ")\n";
          continue;
        }
        std::cout << format_cf(closed);
        if (check) {
          bool eq = qp_equivalent(closed, predicted_tail(cf, lab, 1), 12);
          all_ok = all_ok && eq;
          std::cout << (eq ? "  [matches predicted]" : "  [DIFFERS from predicted]");
        }
        std::cout << "\n";
      }
      if (komatsu) {
        VerificationReport rep = komatsu_special_check(a, n, pmax);
        print_report(rep, as_json);
        all_ok = all_ok && rep.ok();
      }
      return all_ok ? 0 : 1;
    }

    if (*cmd_selftest) return run_selftest(seed);
  } catch (const NotApplicable& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
