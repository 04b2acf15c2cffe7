#include "darm/lmatrix.hpp"

#include <bit>
#include <ostream>
#include <string>

#include "darm/errors.hpp"

namespace darm {

LMatrix LMatrix::build(const TransactionDb& db, ScanCounter& counter) {
  LMatrix m;
  m.rows_ = db.size();
  m.cols_ = db.universe();
  m.words_ = (m.rows_ + kWordBits - 1) / kWordBits;
  m.bits_.assign(m.cols_ * m.words_, 0);

  counter.record_scan();
  for (std::size_t r = 0; r < m.rows_; ++r) {
    const std::size_t word = r / kWordBits;
    const Word mask = Word{1} << (r % kWordBits);
    for (Item item : db[r]) m.bits_[item * m.words_ + word] |= mask;
  }
  return m;
}

std::span<const LMatrix::Word> LMatrix::column(Item item) const {
  if (item >= cols_) {
    throw ArgumentError("item " + std::to_string(item) + " outside matrix with " +
                        std::to_string(cols_) + " columns");
  }
  return {bits_.data() + item * words_, words_};
}

bool LMatrix::test(std::size_t row, Item item) const {
  if (row >= rows_) throw ArgumentError("row " + std::to_string(row) + " out of range");
  return (column(item)[row / kWordBits] >> (row % kWordBits)) & 1U;
}

void LMatrix::check(const Itemset& x) const {
  if (x.empty()) throw ArgumentError("support of the empty itemset is not queried");
  if (x.back() >= cols_) {
    throw ArgumentError("item " + std::to_string(x.back()) + " outside matrix with " +
                        std::to_string(cols_) + " columns");
  }
}

Count LMatrix::support_unchecked(const Itemset& x, std::vector<Word>& scratch) const {
  const Word* a = bits_.data() + x[0] * words_;
  Count total = 0;
  if (x.size() == 1) {
    for (std::size_t w = 0; w < words_; ++w) total += std::popcount(a[w]);
    return total;
  }
  const Word* b = bits_.data() + x[1] * words_;
  if (x.size() == 2) {
    for (std::size_t w = 0; w < words_; ++w) total += std::popcount(a[w] & b[w]);
    return total;
  }

  // Running intersection in ascending item order; stop once it is empty.
  scratch.resize(words_);
  Word any = 0;
  for (std::size_t w = 0; w < words_; ++w) any |= scratch[w] = a[w] & b[w];
  for (std::size_t i = 2; i < x.size() && any != 0; ++i) {
    const Word* c = bits_.data() + x[i] * words_;
    any = 0;
    for (std::size_t w = 0; w < words_; ++w) any |= scratch[w] &= c[w];
  }
  if (any == 0) return 0;
  for (std::size_t w = 0; w < words_; ++w) total += std::popcount(scratch[w]);
  return total;
}

Count LMatrix::support(const Itemset& x) const {
  check(x);
  std::vector<Word> scratch;
  return support_unchecked(x, scratch);
}

std::vector<Count> LMatrix::support_batch(std::span<const Itemset> xs) const {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    try {
      check(xs[i]);
    } catch (const ArgumentError& e) {
      throw ArgumentError("itemset #" + std::to_string(i) + ": " + e.what());
    }
  }
  std::vector<Count> out;
  out.reserve(xs.size());
  std::vector<Word> scratch;
  for (const auto& x : xs) out.push_back(support_unchecked(x, scratch));
  return out;
}

void LMatrix::dump(std::ostream& out) const {
  std::string line(cols_, '0');
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::size_t word = r / kWordBits;
    const Word mask = Word{1} << (r % kWordBits);
    for (std::size_t c = 0; c < cols_; ++c) {
      line[c] = (bits_[c * words_ + word] & mask) ? '1' : '0';
    }
    out << line << '\n';
  }
}

}  // namespace darm
