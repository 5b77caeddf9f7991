// Symmetric list-zipper tape without a blank symbol. Reading past either end of
// the used part yields nothing instead of a blank.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace decider_lab::comb {

enum class Sym : std::uint8_t { Zero, Cross };  // 0 x

inline constexpr Sym kAllSyms[] = {Sym::Zero, Sym::Cross};

char glyph(Sym s);

enum class Dir : std::uint8_t { L, R, N };

char to_char(Dir d);

class ZipperTape {
 public:
  enum class Shape : std::uint8_t { Nil, LeftOf, RightOf, Mid };

  ZipperTape() = default;

  static ZipperTape nil() { return {}; }
  /// Head left of `next`, which is followed by `rest` (nearest first).
  static ZipperTape left_of(Sym next, std::vector<Sym> rest);
  /// Head right of `prev`, which is preceded by `rest` (nearest first).
  static ZipperTape right_of(Sym prev, std::vector<Sym> rest);
  /// left and right are listed nearest first.
  static ZipperTape mid(std::vector<Sym> left, Sym current, std::vector<Sym> right);

  Shape shape() const { return shape_; }
  std::optional<Sym> read() const;
  void move(Dir d);
  /// Returns true when the head was on an overflow position (the tape grows).
  bool write(Sym s);

  /// Symbols left of the head / right of the head, nearest first. In LeftOf the
  /// right side starts with the `next` symbol; in RightOf the left side with `prev`.
  std::vector<Sym> left() const;
  std::vector<Sym> right() const;
  /// All stored symbols from left to right.
  std::vector<Sym> contents() const;

  /// e.g. "x[0]0", "[]00" (LeftOf), "00[]" (RightOf), "[]" (Nil).
  std::string render() const;

  bool operator==(const ZipperTape&) const = default;

 private:
  Shape shape_ = Shape::Nil;
  std::vector<Sym> left_;   // back() is nearest the head
  Sym current_ = Sym::Zero; // meaningful in Mid only
  std::vector<Sym> right_;  // back() is nearest the head
};

std::optional<Sym> read_current(const ZipperTape& t);
ZipperTape move(ZipperTape t, Dir d);
ZipperTape write(ZipperTape t, Sym s);

/// n = 0: Nil. Otherwise the head sits on the first of n zeroes.
ZipperTape encode_zeros(std::size_t n);

}  // namespace decider_lab::comb
