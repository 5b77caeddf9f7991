#include "decider_lab/zipper.hpp"

#include <algorithm>
#include <stdexcept>

namespace decider_lab::comb {

char glyph(Sym s) { return s == Sym::Zero ? '0' : 'x'; }

char to_char(Dir d) {
  switch (d) {
    case Dir::L: return 'L';
    case Dir::R: return 'R';
    case Dir::N: return 'N';
  }
  return '?';
}

namespace {

std::vector<Sym> nearest_at_back(std::vector<Sym> nearest_first) {
  std::reverse(nearest_first.begin(), nearest_first.end());
  return nearest_first;
}

std::vector<Sym> nearest_first(const std::vector<Sym>& at_back) { return {at_back.rbegin(), at_back.rend()}; }

}  // namespace

ZipperTape ZipperTape::left_of(Sym next, std::vector<Sym> rest) {
  ZipperTape t;
  t.shape_ = Shape::LeftOf;
  t.right_ = nearest_at_back(std::move(rest));
  t.right_.push_back(next);
  return t;
}

ZipperTape ZipperTape::right_of(Sym prev, std::vector<Sym> rest) {
  ZipperTape t;
  t.shape_ = Shape::RightOf;
  t.left_ = nearest_at_back(std::move(rest));
  t.left_.push_back(prev);
  return t;
}

ZipperTape ZipperTape::mid(std::vector<Sym> left, Sym current, std::vector<Sym> right) {
  ZipperTape t;
  t.shape_ = Shape::Mid;
  t.left_ = nearest_at_back(std::move(left));
  t.current_ = current;
  t.right_ = nearest_at_back(std::move(right));
  return t;
}

std::optional<Sym> ZipperTape::read() const {
  if (shape_ == Shape::Mid) return current_;
  return std::nullopt;
}

void ZipperTape::move(Dir d) {
  if (d == Dir::N) return;
  // Mirror images: "ahead" is the side we move towards.
  auto& ahead = d == Dir::R ? right_ : left_;
  auto& behind = d == Dir::R ? left_ : right_;
  const Shape fell_off = d == Dir::R ? Shape::RightOf : Shape::LeftOf;
  const Shape re_enter = d == Dir::R ? Shape::LeftOf : Shape::RightOf;

  if (shape_ == Shape::Mid) {
    behind.push_back(current_);
    if (ahead.empty()) {
      shape_ = fell_off;
      current_ = Sym::Zero;  // keeps == structural
    } else {
      current_ = ahead.back();
      ahead.pop_back();
    }
  } else if (shape_ == re_enter) {
    current_ = ahead.back();
    ahead.pop_back();
    shape_ = Shape::Mid;
  }
}

bool ZipperTape::write(Sym s) {
  const bool overflow = shape_ != Shape::Mid;
  current_ = s;
  shape_ = Shape::Mid;
  return overflow;
}

std::vector<Sym> ZipperTape::left() const { return nearest_first(left_); }
std::vector<Sym> ZipperTape::right() const { return nearest_first(right_); }

std::vector<Sym> ZipperTape::contents() const {
  std::vector<Sym> out(left_.begin(), left_.end());
  if (shape_ == Shape::Mid) out.push_back(current_);
  out.insert(out.end(), right_.rbegin(), right_.rend());
  return out;
}

std::string ZipperTape::render() const {
  std::string out;
  for (Sym s : left_) out += glyph(s);
  out += '[';
  if (shape_ == Shape::Mid) out += glyph(current_);
  out += ']';
  for (auto it = right_.rbegin(); it != right_.rend(); ++it) out += glyph(*it);
  return out;
}

std::optional<Sym> read_current(const ZipperTape& t) { return t.read(); }

ZipperTape move(ZipperTape t, Dir d) {
  t.move(d);
  return t;
}

ZipperTape write(ZipperTape t, Sym s) {
  t.write(s);
  return t;
}

ZipperTape encode_zeros(std::size_t n) {
  if (n == 0) return ZipperTape::nil();
  return ZipperTape::mid({}, Sym::Zero, std::vector<Sym>(n - 1, Sym::Zero));
}

}  // namespace decider_lab::comb
