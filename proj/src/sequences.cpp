#include "wdnlip/sequences.hpp"

#include <bit>
#include <charconv>
#include <mutex>
#include <string>

#include "wdnlip/errors.hpp"

namespace wdnlip {

namespace detail {
extern const std::string_view kSobolDirectionTable;
}

std::string_view to_string(SamplerKind kind) noexcept {
  switch (kind) {
    case SamplerKind::Random: return "random";
    case SamplerKind::Halton: return "halton";
    case SamplerKind::Sobol: return "sobol";
  }
  return "sobol";
}

SamplerKind parse_sampler(std::string_view token) {
  if (token == "random") return SamplerKind::Random;
  if (token == "halton") return SamplerKind::Halton;
  if (token == "sobol") return SamplerKind::Sobol;
  throw Error(ErrorKind::InvalidArgument, "unknown sampler '" + std::string(token) + "'");
}

double radical_inverse(std::uint64_t n, unsigned base) {
  const double inv = 1.0 / base;
  double f = inv, r = 0.0;
  while (n > 0) {
    r += static_cast<double>(n % base) * f;
    n /= base;
    f *= inv;
  }
  return r;
}

std::vector<unsigned> first_primes(std::size_t count) {
  std::vector<unsigned> primes;
  for (unsigned c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (unsigned p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

HaltonSequence::HaltonSequence(std::size_t dim) : PointSequence(dim), bases_(first_primes(dim)) {}

void HaltonSequence::next(std::size_t count, std::vector<double>& out) {
  out.reserve(out.size() + count * dim_);
  for (std::size_t j = 0; j < count; ++j, ++index_) {
    for (unsigned b : bases_) out.push_back(radical_inverse(index_, b));
  }
}

namespace {

struct SobolRow {
  unsigned s = 0;
  std::uint32_t a = 0;
  std::vector<std::uint32_t> m;
};

// Rows for dimensions 2..N of the built-in table; dimension 1 is implicit.
const std::vector<SobolRow>& sobol_rows() {
  static std::vector<SobolRow> rows;
  static std::once_flag once;
  std::call_once(once, [] {
    std::string_view text = detail::kSobolDirectionTable;
    bool header = true;
    while (!text.empty()) {
      const auto eol = text.find('\n');
      std::string_view line = text.substr(0, eol);
      text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
      if (header) {
        header = false;
        continue;
      }
      std::vector<std::uint64_t> fields;
      const char* p = line.data();
      const char* end = line.data() + line.size();
      while (p < end) {
        while (p < end && (*p == ' ' || *p == '\r')) ++p;
        if (p == end) break;
        std::uint64_t v = 0;
        auto [q, ec] = std::from_chars(p, end, v);
        if (ec != std::errc()) throw Error(ErrorKind::InvalidArgument, "corrupt Sobol table");
        fields.push_back(v);
        p = q;
      }
      if (fields.empty()) continue;
      if (fields.size() < 3 || fields.size() != 3 + fields[1]) {
        throw Error(ErrorKind::InvalidArgument, "corrupt Sobol table row");
      }
      SobolRow row;
      row.s = static_cast<unsigned>(fields[1]);
      row.a = static_cast<std::uint32_t>(fields[2]);
      for (std::size_t i = 3; i < fields.size(); ++i) row.m.push_back(static_cast<std::uint32_t>(fields[i]));
      rows.push_back(std::move(row));
    }
  });
  return rows;
}

std::array<std::uint32_t, 32> direction_numbers(std::size_t dim_index) {
  std::array<std::uint32_t, 32> v{};
  if (dim_index == 0) {
    for (unsigned i = 0; i < 32; ++i) v[i] = 1u << (31 - i);
    return v;
  }
  const SobolRow& row = sobol_rows()[dim_index - 1];
  const unsigned s = row.s;
  for (unsigned i = 0; i < 32; ++i) {
    if (i < s) {
      v[i] = row.m[i] << (31 - i);
    } else {
      std::uint32_t x = v[i - s] ^ (v[i - s] >> s);
      for (unsigned k = 1; k < s; ++k) {
        if ((row.a >> (s - 1 - k)) & 1u) x ^= v[i - k];
      }
      v[i] = x;
    }
  }
  return v;
}

}  // namespace

std::size_t sobol_max_dimension() noexcept {
  try {
    return sobol_rows().size() + 1;
  } catch (...) {
    return 1;
  }
}

SobolSequence::SobolSequence(std::size_t dim) : PointSequence(dim), state_(dim, 0) {
  if (dim > sobol_max_dimension()) {
    throw Error(ErrorKind::DimensionTooLarge,
                std::to_string(dim) + " > " + std::to_string(sobol_max_dimension()));
  }
  directions_.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) directions_.push_back(direction_numbers(k));
}

void SobolSequence::next(std::size_t count, std::vector<double>& out) {
  constexpr double kScale = 0x1p-32;
  out.reserve(out.size() + count * dim_);
  for (std::size_t j = 0; j < count; ++j) {
    if (index_ == 0xffffffffULL) throw Error(ErrorKind::InvalidArgument, "Sobol sequence exhausted");
    // Gray-code step from point index_ to index_ + 1
    const unsigned c = static_cast<unsigned>(std::countr_one(index_));
    ++index_;
    for (std::size_t k = 0; k < dim_; ++k) {
      state_[k] ^= directions_[k][c];
      out.push_back(static_cast<double>(state_[k]) * kScale);
    }
  }
}

RandomSequence::RandomSequence(std::size_t dim, std::uint64_t seed) : PointSequence(dim), engine_(seed) {}

void RandomSequence::next(std::size_t count, std::vector<double>& out) {
  constexpr double kScale = 0x1p-53;
  out.reserve(out.size() + count * dim_);
  for (std::size_t j = 0; j < count * dim_; ++j) out.push_back(static_cast<double>(engine_() >> 11) * kScale);
}

std::unique_ptr<PointSequence> make_sequence(SamplerKind kind, std::size_t dim, std::uint64_t seed) {
  switch (kind) {
    case SamplerKind::Random: return std::make_unique<RandomSequence>(dim, seed);
    case SamplerKind::Halton: return std::make_unique<HaltonSequence>(dim);
    case SamplerKind::Sobol: return std::make_unique<SobolSequence>(dim);
  }
  throw Error(ErrorKind::InvalidArgument, "bad sampler kind");
}

namespace {

std::vector<std::vector<double>> rows_of(PointSequence& seq, std::size_t n) {
  std::vector<double> flat;
  seq.next(n, flat);
  std::vector<std::vector<double>> rows(n);
  const std::size_t d = seq.dimension();
  for (std::size_t j = 0; j < n; ++j) rows[j].assign(flat.begin() + j * d, flat.begin() + (j + 1) * d);
  return rows;
}

}  // namespace

std::vector<std::vector<double>> halton(std::size_t d, std::size_t n) {
  HaltonSequence seq(d);
  return rows_of(seq, n);
}

std::vector<std::vector<double>> sobol(std::size_t d, std::size_t n) {
  SobolSequence seq(d);
  return rows_of(seq, n);
}

std::vector<std::vector<double>> random_points(std::size_t d, std::size_t n, std::uint64_t seed) {
  RandomSequence seq(d, seed);
  return rows_of(seq, n);
}

}  // namespace wdnlip
