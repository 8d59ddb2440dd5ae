#include <algorithm>
#include <map>

#include "mtg/tm.hpp"

// Search machine layout. The tape starts with the inverse-unary inputs in
// reverse round order: [c_n blanks] D ... [c_1 blanks] D. The machine
//   1. shifts the input right by one cell and drops a wall L at cell 0,
//   2. converts each blank run into a unary register, building the bank
//      `# 1^{c_1} # 1^{c_2} # ... # 1^{c_n} # 1^x H` (x starts empty),
//   3. loops: evaluates the positive and negative monomials of P at
//      (x, c) as tally marks in a scratch zone right of H, compares the
//      tallies, halts on equality, otherwise erases the zone, bumps x by
//      one and repeats.
// Arithmetic is unary with append-only scratch blocks, so every scan has a
// fixed landmark (H) and the head never revisits cell 0 after the shift.
namespace mtg::tm {

namespace {

// Alphabet indices. kBlank/kDivider are fixed by the codec.
enum Sym : Symbol {
  S_BLANK = 0,  // _
  S_DIV = 1,    // D   unprocessed input divider
  S_DIVX = 2,   // d   processed divider
  S_SPENT = 3,  // b   consumed blank / consumed unary mark
  S_ONE = 4,    // 1   unary mark
  S_SEP = 5,    // #   register separator
  S_HOME = 6,   // H   end of the x register; unique landmark
  S_RES = 7,    // 2   result mark under construction
  S_CPY = 8,    // 3   register mark already copied this pass
  S_POS = 9,    // p   positive tally
  S_NEG = 10,   // q   negative tally
  S_USED = 11,  // e   consumed tally
  S_WALL = 12,  // L   left wall
};

const std::vector<std::string> kAlphabet = {"_", "D", "d", "b", "1", "#", "H",
                                            "2", "3", "p", "q", "e", "L"};

struct Builder {
  TuringMachineSpec m;

  int st(const std::string& name) {
    m.states.push_back(name);
    return static_cast<int>(m.states.size()) - 1;
  }
  void tr(int s, Symbol a, int ns, Symbol w, Dir d) {
    auto ok = m.transitions.emplace(std::make_pair(s, a), Transition{ns, w, d});
    if (!ok.second) throw std::logic_error("duplicate transition emitted");
  }
  void skip(int s, std::initializer_list<Symbol> syms, Dir d) {
    for (Symbol a : syms) tr(s, a, s, a, d);
  }
};

// Exponent vector (index 0 = x, index i = y_i) -> coefficient.
using Monomials = std::map<std::vector<int>, BigInt>;

void expand(const Poly& p, int n, Monomials& out, bool negate) {
  switch (p.kind) {
    case Poly::Kind::Const: {
      std::vector<int> e(n + 1, 0);
      out[e] += negate ? -p.value : p.value;
      break;
    }
    case Poly::Kind::Var: {
      std::vector<int> e(n + 1, 0);
      e[p.var] = 1;
      out[e] += BigInt(negate ? -1 : 1);
      break;
    }
    case Poly::Kind::Add:
      expand(p.args[0], n, out, negate);
      expand(p.args[1], n, out, negate);
      break;
    case Poly::Kind::Sub:
      expand(p.args[0], n, out, negate);
      expand(p.args[1], n, out, !negate);
      break;
    case Poly::Kind::Mul: {
      Monomials a, bm;
      expand(p.args[0], n, a, false);
      expand(p.args[1], n, bm, false);
      for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : bm) {
          std::vector<int> e(n + 1);
          for (int i = 0; i <= n; ++i) e[i] = ea[i] + eb[i];
          out[e] += (negate ? -ca : ca) * cb;
        }
      break;
    }
  }
}

struct Op {
  int64_t coeff_mag = 0;     // opening block value
  std::vector<int> factors;  // register indices, 0 = x, j = y_j
  bool positive = true;
};

}  // namespace

TuringMachineSpec build_search_machine(const ArithmeticSentence& s,
                                       SearchMachineInfo* info) {
  s.validate();
  const int n = s.n();
  Monomials mono;
  expand(s.polynomial, n, mono, false);
  std::erase_if(mono, [](const auto& kv) { return kv.second == 0; });

  std::vector<Op> ops;
  for (const auto& [exps, coeff] : mono) {
    Op op;
    op.positive = coeff > 0;
    BigInt mag = op.positive ? coeff : BigInt(-coeff);
    if (mag > 2000)
      throw std::invalid_argument("coefficient magnitude too large to compile");
    op.coeff_mag = mag.convert_to<int64_t>();
    for (int v = 0; v <= n; ++v)
      for (int k = 0; k < exps[v]; ++k) op.factors.push_back(v);
    ops.push_back(std::move(op));
  }

  Builder b;
  b.m.alphabet = kAlphabet;

  // State 0 is the start state so a default MachineConfig runs the machine
  // from the top.
  const int start = b.st(n == 0 ? "init0" : "shift_start");
  b.m.initial_state = start;

  // Pre-create one entry state per op so bodies can be wired forward.
  // Every entry expects the head on the first blank after the zone (END).
  std::vector<int> ent;
  for (size_t i = 0; i < ops.size(); ++i) {
    const std::string mi = "m" + std::to_string(i);
    ent.push_back(b.st(mi + "_const"));
    for (size_t f = 0; f < ops[i].factors.size(); ++f)
      ent.push_back(b.st(mi + "_mul" + std::to_string(f)));
    ent.push_back(b.st(mi + "_tally"));
  }
  const int cp_p = b.st("cmp_p");
  ent.push_back(cp_p);
  const int loop_top = ent.front();

  // ---- input phases ------------------------------------------------------
  if (n == 0) {
    int z1 = b.st("init1");
    b.tr(start, S_BLANK, z1, S_SEP, Dir::Right);
    b.tr(z1, S_BLANK, loop_top, S_HOME, Dir::Right);
  } else {
    std::vector<int> sh_b(n + 1, -1), sh_d(n + 1, -1);
    for (int k = 1; k <= n; ++k) {
      sh_b[k] = b.st("shift_b" + std::to_string(k));
      sh_d[k] = b.st("shift_d" + std::to_string(k));
    }
    std::vector<int> find_run(n + 1), seek(n + 1), append(n + 1), close(n + 1);
    for (int j = 1; j <= n; ++j) {
      find_run[j] = b.st("find_run" + std::to_string(j));
      seek[j] = b.st("seek" + std::to_string(j));
      append[j] = b.st("append" + std::to_string(j));
      if (j < n) close[j] = b.st("close" + std::to_string(j));
    }
    int close_fin = b.st("close_fin");
    int write_home = b.st("write_home");

    b.tr(start, S_BLANK, sh_b[n], S_WALL, Dir::Right);
    b.tr(start, S_DIV, sh_d[n], S_WALL, Dir::Right);
    for (int k = 1; k <= n; ++k) {
      b.tr(sh_b[k], S_BLANK, sh_b[k], S_BLANK, Dir::Right);
      b.tr(sh_b[k], S_DIV, sh_d[k], S_BLANK, Dir::Right);
      if (k > 1) {
        b.tr(sh_d[k], S_BLANK, sh_b[k - 1], S_DIV, Dir::Right);
        b.tr(sh_d[k], S_DIV, sh_d[k - 1], S_DIV, Dir::Right);
      } else {
        // everything shifted; open the register bank just after the input
        b.tr(sh_d[1], S_BLANK, find_run[1], S_DIV, Dir::Right);
      }
    }
    // find_run[1] is entered on the blank after the last divider and opens
    // the bank there; for j > 1 it is entered mid-tape scanning left.
    for (int j = 1; j <= n; ++j) {
      if (j == 1) b.tr(find_run[1], S_BLANK, find_run[1], S_SEP, Dir::Left);
      b.skip(find_run[j], {S_SPENT, S_DIVX, S_ONE, S_SEP}, Dir::Left);
      b.tr(find_run[j], S_DIV, seek[j], S_DIVX, Dir::Left);

      b.skip(seek[j], {S_SPENT, S_DIVX, S_ONE, S_SEP}, Dir::Left);
      b.tr(seek[j], S_BLANK, append[j], S_SPENT, Dir::Right);
      if (j < n)
        b.tr(seek[j], S_DIV, close[j], S_DIV, Dir::Right);
      else
        b.tr(seek[n], S_WALL, close_fin, S_WALL, Dir::Right);

      b.skip(append[j], {S_SPENT, S_DIVX, S_SEP, S_ONE}, Dir::Right);
      b.tr(append[j], S_BLANK, seek[j], S_ONE, Dir::Left);

      if (j < n) {
        b.skip(close[j], {S_SPENT, S_DIVX, S_ONE, S_SEP}, Dir::Right);
        b.tr(close[j], S_BLANK, find_run[j + 1], S_SEP, Dir::Left);
      }
    }
    b.skip(close_fin, {S_SPENT, S_DIVX, S_ONE, S_SEP}, Dir::Right);
    b.tr(close_fin, S_BLANK, write_home, S_SEP, Dir::Right);
    b.tr(write_home, S_BLANK, loop_top, S_HOME, Dir::Right);
  }

  // ---- evaluation loop ---------------------------------------------------
  size_t ei = 0;
  for (size_t i = 0; i < ops.size(); ++i) {
    const Op& op = ops[i];
    const std::string mi = "m" + std::to_string(i);

    // Open a scratch block with coeff_mag marks: entry writes '%', then a
    // chain of coeff_mag states each writes one '1'.
    {
      int state = ent[ei];
      Symbol w = S_SEP;
      for (int64_t k = 0; k < op.coeff_mag; ++k) {
        int nxt = b.st(mi + "_c" + std::to_string(k + 1));
        b.tr(state, S_BLANK, nxt, w, Dir::Right);
        state = nxt;
        w = S_ONE;
      }
      b.tr(state, S_BLANK, ent[ei + 1], w, Dir::Right);
    }
    ++ei;

    for (size_t f = 0; f < op.factors.size(); ++f, ++ei) {
      const int reg = op.factors[f];
      const int seps = reg == 0 ? 0 : n - reg + 1;
      const std::string p = mi + "_f" + std::to_string(f) + "_";

      int m_open = ent[ei];
      int outer = b.st(p + "outer");
      int outer_seek = b.st(p + "outer_seek");
      int nav_h = b.st(p + "nav_h");
      int seekmark = b.st(p + "seekmark");
      int goto_end = b.st(p + "goto_end");
      int restore = b.st(p + "restore");
      int to_end = b.st(p + "to_end");
      int fin = b.st(p + "fin");
      int fin_b = b.st(p + "fin_b");
      std::vector<int> need(seps + 1, -1);
      for (int k = 1; k <= seps; ++k)
        need[k] = b.st(p + "need" + std::to_string(k));

      // open the result block and look for the first multiplier mark
      b.tr(m_open, S_BLANK, outer, S_SEP, Dir::Left);

      // outer: consume one mark of the old current block (right to left)
      b.skip(outer, {S_SPENT}, Dir::Left);
      b.tr(outer, S_ONE, nav_h, S_SPENT, Dir::Left);
      b.tr(outer, S_SEP, fin, S_SEP, Dir::Right);

      b.skip(outer_seek, {S_RES}, Dir::Left);
      b.tr(outer_seek, S_SEP, outer, S_SEP, Dir::Left);

      // walk left to the landmark, then into the target register
      b.skip(nav_h, {S_ONE, S_RES, S_SPENT, S_SEP, S_POS, S_NEG}, Dir::Left);
      b.tr(nav_h, S_HOME, seps == 0 ? seekmark : need[seps], S_HOME, Dir::Left);
      for (int k = seps; k >= 1; --k) {
        b.skip(need[k], {S_ONE, S_CPY}, Dir::Left);
        b.tr(need[k], S_SEP, k > 1 ? need[k - 1] : seekmark, S_SEP, Dir::Left);
      }

      // copy one register mark per visit; '#' on this scan means the
      // register is exhausted for this pass
      b.skip(seekmark, {S_CPY}, Dir::Left);
      b.tr(seekmark, S_ONE, goto_end, S_CPY, Dir::Right);
      b.tr(seekmark, S_SEP, restore, S_SEP, Dir::Right);

      b.skip(goto_end,
             {S_ONE, S_CPY, S_SEP, S_HOME, S_SPENT, S_RES, S_POS, S_NEG},
             Dir::Right);
      b.tr(goto_end, S_BLANK, nav_h, S_RES, Dir::Left);

      // pass done: unmark the register, then fetch the next multiplier mark
      b.tr(restore, S_CPY, restore, S_ONE, Dir::Right);
      b.tr(restore, S_SEP, to_end, S_SEP, Dir::Right);
      b.tr(restore, S_HOME, to_end, S_HOME, Dir::Right);
      b.skip(to_end, {S_ONE, S_SEP, S_HOME, S_SPENT, S_RES, S_POS, S_NEG},
             Dir::Right);
      b.tr(to_end, S_BLANK, outer_seek, S_BLANK, Dir::Left);

      // multiplier exhausted: commit the result block and hand over at END
      b.skip(fin, {S_SPENT, S_SEP}, Dir::Right);
      b.tr(fin, S_RES, fin, S_ONE, Dir::Right);
      b.tr(fin, S_BLANK, fin_b, S_BLANK, Dir::Left);
      b.tr(fin_b, S_ONE, ent[ei + 1], S_ONE, Dir::Right);
      b.tr(fin_b, S_SEP, ent[ei + 1], S_SEP, Dir::Right);
    }

    // tally: convert the final block of this monomial into p/q marks
    {
      const Symbol tallysym = op.positive ? S_POS : S_NEG;
      int tl_seek = ent[ei];
      int tl_put = b.st(mi + "_tl_put");
      int tl_exit = b.st(mi + "_tl_exit");
      int tl_b = b.st(mi + "_tl_b");
      b.tr(tl_seek, S_BLANK, tl_seek, S_BLANK, Dir::Left);
      b.skip(tl_seek, {S_POS, S_NEG, S_SPENT}, Dir::Left);
      b.tr(tl_seek, S_ONE, tl_put, S_SPENT, Dir::Right);
      b.tr(tl_seek, S_SEP, tl_exit, S_SEP, Dir::Right);
      b.skip(tl_put, {S_SPENT, S_POS, S_NEG}, Dir::Right);
      b.tr(tl_put, S_BLANK, tl_seek, tallysym, Dir::Left);
      b.skip(tl_exit, {S_SPENT, S_POS, S_NEG}, Dir::Right);
      b.tr(tl_exit, S_BLANK, tl_b, S_BLANK, Dir::Left);
      for (Symbol a : {S_POS, S_NEG, S_SPENT, S_SEP})
        b.tr(tl_b, a, ent[ei + 1], a, Dir::Right);
    }
    ++ei;
  }

  // ---- compare tallies, halt on equality, else bump x --------------------
  int cp_toend1 = b.st("cmp_toend1");
  int cp_q = b.st("cmp_q");
  int cp_toend2 = b.st("cmp_toend2");
  int cp_rest = b.st("cmp_rest");
  int accept = b.st("accept");
  int erase = b.st("bump_erase");
  int back = b.st("bump_back");
  int bump_seek_h = b.st("bump_seek_h");
  int bump2 = b.st("bump_x");

  b.tr(cp_p, S_BLANK, cp_p, S_BLANK, Dir::Left);
  b.skip(cp_p, {S_SEP, S_SPENT, S_USED, S_NEG}, Dir::Left);
  b.tr(cp_p, S_POS, cp_toend1, S_USED, Dir::Right);
  b.tr(cp_p, S_HOME, cp_rest, S_HOME, Dir::Right);

  b.skip(cp_toend1, {S_SEP, S_SPENT, S_USED, S_NEG, S_POS}, Dir::Right);
  b.tr(cp_toend1, S_BLANK, cp_q, S_BLANK, Dir::Left);

  b.skip(cp_q, {S_SEP, S_SPENT, S_USED, S_POS}, Dir::Left);
  b.tr(cp_q, S_NEG, cp_toend2, S_USED, Dir::Right);
  b.tr(cp_q, S_HOME, erase, S_HOME, Dir::Right);  // p surplus

  b.skip(cp_toend2, {S_SEP, S_SPENT, S_USED, S_NEG, S_POS}, Dir::Right);
  b.tr(cp_toend2, S_BLANK, cp_p, S_BLANK, Dir::Left);

  // all p consumed: any q left means a surplus, otherwise equal -> halt
  b.skip(cp_rest, {S_SEP, S_SPENT, S_USED}, Dir::Right);
  b.tr(cp_rest, S_NEG, bump_seek_h, S_NEG, Dir::Left);
  b.tr(cp_rest, S_BLANK, accept, S_BLANK, Dir::Right);

  b.skip(bump_seek_h, {S_SEP, S_SPENT, S_USED, S_POS, S_NEG}, Dir::Left);
  b.tr(bump_seek_h, S_HOME, erase, S_HOME, Dir::Right);

  for (Symbol a : {S_SEP, S_SPENT, S_USED, S_POS, S_NEG, S_ONE, S_RES})
    b.tr(erase, a, erase, S_BLANK, Dir::Right);
  b.tr(erase, S_BLANK, back, S_BLANK, Dir::Left);
  b.tr(back, S_BLANK, back, S_BLANK, Dir::Left);
  b.tr(back, S_HOME, bump2, S_ONE, Dir::Right);
  b.tr(bump2, S_BLANK, loop_top, S_HOME, Dir::Right);

  if (info) info->x_bump_state = bump2;
  b.m.validate();
  return b.m;
}

MachineConfig search_start_config(const InputAssignment& vals) {
  InputAssignment reversed;
  reversed.values.assign(vals.values.rbegin(), vals.values.rend());
  auto cells = encode_inputs(reversed);
  MachineConfig cfg;
  for (size_t i = 0; i < cells.size(); ++i)
    cfg.write(static_cast<int64_t>(i), cells[i]);
  return cfg;
}

int64_t steps_to_exhaust(const TuringMachineSpec& tm,
                         const SearchMachineInfo& info,
                         const MachineConfig& start, int64_t bound,
                         int64_t max_steps) {
  MachineConfig cur = start;
  int64_t bumps = 0;
  for (int64_t i = 0; i < max_steps; ++i) {
    auto next = step(tm, cur);
    if (!next) return -1;  // halted: a solution was found first
    cur = *next;
    if (cur.state == info.x_bump_state) {
      ++bumps;
      if (bumps == bound + 1) return cur.steps_taken;
    }
  }
  throw std::runtime_error("steps_to_exhaust: budget exceeded");
}

}  // namespace mtg::tm
