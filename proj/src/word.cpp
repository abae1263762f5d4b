#include "qmf/word.hpp"

#include <cctype>
#include <cstdint>
#include <cstdlib>

namespace qmf {

namespace {

void check_letter(Letter l, int rank) {
  Letter idx = l < 0 ? -l : l;
  if (idx < 1 || idx > rank)
    throw ValidationError("generator index " + std::to_string(idx) +
                          " out of range for rank " + std::to_string(rank));
}

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == -l)
    out.pop_back();
  else
    out.push_back(l);
}

void require_same_rank(const Word& u, const Word& v) {
  if (u.rank() != v.rank())
    throw ValidationError("rank mismatch: " + std::to_string(u.rank()) +
                          " vs " + std::to_string(v.rank()));
}

}  // namespace

Word::Word(int rank, std::span<const Letter> letters) : rank_(check_rank(rank)) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    check_letter(l, rank_);
    push_reduced(letters_, l);
  }
}

Word Word::generator(int rank, int index, int sign) {
  Word w(rank);
  if (sign != 1 && sign != -1) throw ValidationError("generator sign must be +1 or -1");
  Letter l = sign * index;
  check_letter(l, rank);
  w.letters_.push_back(l);
  return w;
}

Word multiply(const Word& u, const Word& v) {
  require_same_rank(u, v);
  Word out(u.rank());
  out.letters_.reserve(u.size() + v.size());
  out.letters_ = u.letters_;
  for (Letter l : v.letters_) push_reduced(out.letters_, l);
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rank());
  out.letters_.reserve(w.size());
  for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it)
    out.letters_.push_back(-*it);
  return out;
}

CyclicFactorization cyclic_reduce(const Word& w) {
  std::span<const Letter> ls = w.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  Word conj(w.rank(), ls.subspan(0, lo));
  Word core(w.rank(), ls.subspan(lo, hi - lo));
  return {std::move(conj), std::move(core)};
}

Word power(const Word& w, std::int64_t k) {
  if (k == 0 || w.is_identity()) return Word::identity(w.rank());
  if (k == 1) return w;
  if (k == -1) return inverse(w);
  if (k < 0) return power(inverse(w), -k);
  std::span<const Letter> ls = w.letters();
  Word out(w.rank());
  if (ls.front() != -ls.back()) {
    // Already cyclically reduced: w^k is plain repetition.
    out.letters_.reserve(ls.size() * static_cast<std::size_t>(k));
    for (std::int64_t rep = 0; rep < k; ++rep)
      out.letters_.insert(out.letters_.end(), ls.begin(), ls.end());
    return out;
  }
  auto [conj, core] = cyclic_reduce(w);
  // core is cyclically reduced and nonempty, so core^k needs no reduction.
  out.letters_.reserve(conj.size() * 2 + core.size() * static_cast<std::size_t>(k));
  out.letters_ = conj.letters_;
  for (std::int64_t rep = 0; rep < k; ++rep)
    out.letters_.insert(out.letters_.end(), core.letters_.begin(), core.letters_.end());
  for (auto it = conj.letters_.rbegin(); it != conj.letters_.rend(); ++it)
    out.letters_.push_back(-*it);
  return out;
}

Word commutator(const Word& g1, const Word& g2) {
  require_same_rank(g1, g2);
  Word out(g1.rank());
  out.letters_.reserve(2 * (g1.size() + g2.size()));
  out.letters_.assign(g1.letters_.begin(), g1.letters_.end());
  for (Letter l : g2.letters_) push_reduced(out.letters_, l);
  for (auto it = g1.letters_.rbegin(); it != g1.letters_.rend(); ++it)
    push_reduced(out.letters_, -*it);
  for (auto it = g2.letters_.rbegin(); it != g2.letters_.rend(); ++it)
    push_reduced(out.letters_, -*it);
  return out;
}

IntVector abelianize(const Word& w) {
  IntVector counts(static_cast<std::size_t>(w.rank()), 0);
  for (Letter l : w.letters()) {
    if (l > 0)
      ++counts[static_cast<std::size_t>(l - 1)];
    else
      --counts[static_cast<std::size_t>(-l - 1)];
  }
  return counts;
}

bool is_in_commutator_subgroup(const Word& w) {
  IntVector a = abelianize(w);
  for (auto c : a)
    if (c != 0) return false;
  return true;
}

LatticePath prefix_path(const Word& w) {
  LatticePath path;
  path.points.reserve(w.size() + 1);
  IntVector current(static_cast<std::size_t>(w.rank()), 0);
  path.points.push_back(current);
  for (Letter l : w.letters()) {
    if (l > 0)
      ++current[static_cast<std::size_t>(l - 1)];
    else
      --current[static_cast<std::size_t>(-l - 1)];
    path.points.push_back(current);
  }
  return path;
}

namespace {

// Recursive-descent parser for the word grammar. Atoms are letter tokens,
// x<n>/X<n> tokens, or parenthesized words; any atom may carry ^<int>.
class WordParser {
 public:
  WordParser(std::string_view text, int rank, std::size_t max_letters)
      : text_(text), rank_(rank), max_letters_(max_letters) {}

  Word parse() {
    Word w = parse_sequence();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return w;
  }

 private:
  Word parse_sequence() {
    Word acc = Word::identity(rank_);
    for (;;) {
      skip_ws();
      if (pos_ == text_.size() || text_[pos_] == ')') return acc;
      acc = multiply(acc, parse_atom());
      if (acc.size() > max_letters_)
        throw ResourceLimitError("parsed word exceeds the letter cap");
    }
  }

  Word parse_atom() {
    Word base = parse_base();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      std::int64_t exp = parse_integer();
      std::int64_t mag = exp < 0 ? -exp : exp;
      if (base.size() > 0 &&
          static_cast<std::uint64_t>(mag) > max_letters_ / base.size())
        throw ResourceLimitError("exponent expands word past the letter cap");
      base = power(base, exp);
    }
    return base;
  }

  Word parse_base() {
    char c = text_[pos_];
    if (c == '(') {
      std::size_t open = pos_++;
      Word inner = parse_sequence();
      if (pos_ == text_.size() || text_[pos_] != ')') fail("unbalanced '('", open);
      ++pos_;
      return inner;
    }
    if (c == 'x' || c == 'X') {
      // 'x' / 'X' are only the indexed forms when a digit follows; otherwise
      // they are ordinary letters (generator 24).
      if (pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        int sign = c == 'x' ? +1 : -1;
        ++pos_;
        std::int64_t index = parse_integer();
        if (index < 1) fail("generator index must be >= 1");
        return make_generator(static_cast<Letter>(sign * index));
      }
    }
    if (c >= 'a' && c <= 'z') {
      ++pos_;
      return make_generator(static_cast<Letter>(c - 'a' + 1));
    }
    if (c >= 'A' && c <= 'Z') {
      ++pos_;
      return make_generator(static_cast<Letter>(-(c - 'A' + 1)));
    }
    fail("expected generator, 'x<n>', or '('");
  }

  Word make_generator(Letter l) {
    Letter idx = l < 0 ? -l : l;
    if (idx > rank_)
      fail("generator index " + std::to_string(idx) + " exceeds rank " +
               std::to_string(rank_),
           pos_ - 1);
    return Word::generator(rank_, idx, l < 0 ? -1 : +1);
  }

  std::int64_t parse_integer() {
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer", start);
    std::int64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > (std::int64_t{1} << 40)) fail("exponent too large", start);
      ++pos_;
    }
    return neg ? -value : value;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw ParseError(msg, at);
  }

  std::string_view text_;
  int rank_;
  std::size_t max_letters_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, int rank, std::size_t max_letters) {
  if (rank < 1) throw ValidationError("word rank must be >= 1");
  return WordParser(text, rank, max_letters).parse();
}

Word random_reduced_word(std::mt19937_64& rng, int rank, int len) {
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(len > 0 ? len : 0));
  std::uniform_int_distribution<int> gen_dist(1, rank);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  while (static_cast<int>(letters.size()) < len) {
    Letter l = static_cast<Letter>((sign_dist(rng) ? 1 : -1) * gen_dist(rng));
    if (!letters.empty() && letters.back() == -l) continue;
    letters.push_back(l);
  }
  return Word(rank, letters);
}

std::string print_word(const Word& w) {
  std::string out;
  bool first = true;
  for (Letter l : w.letters()) {
    if (!first) out.push_back(' ');
    first = false;
    Letter idx = l < 0 ? -l : l;
    if (w.rank() <= 26) {
      out.push_back(static_cast<char>((l > 0 ? 'a' : 'A') + idx - 1));
    } else {
      out.push_back(l > 0 ? 'x' : 'X');
      out += std::to_string(idx);
    }
  }
  return out;
}

}  // namespace qmf
