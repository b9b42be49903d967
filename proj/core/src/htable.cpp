#include "cyclew/htable.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>

#include "cyclew/errors.hpp"

namespace cyclew {

namespace {

constexpr std::array<char, 4> kMagic = {'C', 'W', 'H', 'T'};

// 2^d for d <= 0, flushing to zero below the normal range.
inline double pow2_nonpositive(std::int64_t d) noexcept {
  if (d < -1022) {
    return 0.0;
  }
  return std::bit_cast<double>(static_cast<std::uint64_t>(d + 1023) << 52);
}

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
  if (!is) {
    throw ValidationError("HTable cache truncated");
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

HTable::HTable(WeightSequence weight, std::vector<ScaledReal> h)
    : weight_(std::move(weight)), h_(std::move(h)) {
  if (h_.empty() || h_[0] != ScaledReal::from_double(1.0)) {
    throw ValidationError("HTable needs h_0 = 1");
  }
}

const ScaledReal& HTable::h(std::int64_t n) const {
  if (n < 0 || n > n_max()) {
    throw CapacityError("h_" + std::to_string(n) + " is outside the table (n_max = " +
                        std::to_string(n_max()) + ")");
  }
  return h_[static_cast<std::size_t>(n)];
}

std::vector<double> HTable::log_values() const {
  std::vector<double> out(h_.size());
  std::transform(h_.begin(), h_.end(), out.begin(), [](const ScaledReal& x) { return x.log(); });
  return out;
}

double HTable::recurrence_residual(std::int64_t n) const {
  if (n < 1 || n > n_max()) {
    throw CapacityError("recurrence residual index out of range");
  }
  ScaledReal rhs;
  for (std::int64_t k = 1; k <= n; ++k) {
    rhs += ScaledReal::from_log(weight_.log_theta(k)) * h_[static_cast<std::size_t>(n - k)];
  }
  const ScaledReal lhs = h_[static_cast<std::size_t>(n)] * static_cast<double>(n);
  return relative_difference(lhs, rhs);
}

void HTable::write(std::ostream& os) const {
  if (weight_.family() == WeightFamily::Table) {
    throw ValidationError("table weights cannot be written to the HTable cache");
  }
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, kFormatVersion);
  put_le<std::uint8_t>(os, static_cast<std::uint8_t>(weight_.family()));
  put_le<double>(os, weight_.parameter());
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(n_max()));
  for (const auto& x : h_) {
    put_le<double>(os, x.mantissa());
    put_le<std::int64_t>(os, x.exponent());
  }
  if (!os) {
    throw ValidationError("failed writing HTable cache");
  }
}

void HTable::save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw ValidationError("cannot open " + path.string() + " for writing");
  }
  write(os);
}

HTable HTable::read(std::istream& is, double sample_fraction) {
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) {
    throw ValidationError("not an HTable cache (bad magic)");
  }
  const auto version = get_le<std::uint32_t>(is);
  if (version != kFormatVersion) {
    throw ValidationError("unsupported HTable cache version " + std::to_string(version));
  }
  const auto tag = get_le<std::uint8_t>(is);
  const auto parameter = get_le<double>(is);
  const auto n_max = get_le<std::uint64_t>(is);

  WeightSequence weight = [&] {
    switch (tag) {
      case static_cast<std::uint8_t>(WeightFamily::Polynomial):
        return WeightSequence::polynomial(parameter);
      case static_cast<std::uint8_t>(WeightFamily::Ewens):
        return WeightSequence::ewens(parameter);
      default:
        throw ValidationError("unknown weight family tag " + std::to_string(tag));
    }
  }();

  if (n_max > (std::uint64_t{1} << 32)) {
    throw ValidationError("implausible n_max in HTable cache");
  }
  std::vector<ScaledReal> h;
  h.reserve(static_cast<std::size_t>(n_max) + 1);
  for (std::uint64_t i = 0; i <= n_max; ++i) {
    const auto m = get_le<double>(is);
    const auto e = get_le<std::int64_t>(is);
    if (!(m == 0.0 || (m >= 1.0 && m < 2.0))) {
      throw ValidationError("HTable cache mantissa out of range at index " + std::to_string(i));
    }
    h.push_back(ScaledReal::from_parts(m, e));
  }
  HTable table(std::move(weight), std::move(h));

  const auto nm = table.n_max();
  if (nm >= 1) {
    std::set<std::int64_t> picks{nm};
    const auto want =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(sample_fraction * nm)));
    std::mt19937_64 rng(0x43574854ULL ^ static_cast<std::uint64_t>(nm));
    std::uniform_int_distribution<std::int64_t> pick(1, nm);
    while (static_cast<std::int64_t>(picks.size()) < std::min(want, nm)) {
      picks.insert(pick(rng));
    }
    for (std::int64_t n : picks) {
      if (table.recurrence_residual(n) > kResidualTolerance) {
        throw ValidationError("HTable cache fails the recurrence check at n = " +
                              std::to_string(n));
      }
    }
  }
  return table;
}

HTable HTable::load(const std::filesystem::path& path, double sample_fraction) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw ValidationError("cannot open " + path.string());
  }
  return read(is, sample_fraction);
}

HTable build_h_table(const WeightSequence& w, std::int64_t n_max) {
  if (n_max < 0) {
    throw DomainError("build_h_table needs n_max >= 0");
  }
  const auto size = static_cast<std::size_t>(n_max) + 1;
  std::vector<double> theta_m(size);
  std::vector<std::int64_t> theta_e(size);
  for (std::int64_t k = 1; k <= n_max; ++k) {
    const ScaledReal t = ScaledReal::from_log(w.log_theta(k));
    theta_m[static_cast<std::size_t>(k)] = t.mantissa();
    theta_e[static_cast<std::size_t>(k)] = t.exponent();
  }

  std::vector<double> hm(size);
  std::vector<std::int64_t> he(size);
  hm[0] = 1.0;
  he[0] = 0;
  constexpr std::int64_t kZeroExponent = std::numeric_limits<std::int64_t>::min() / 4;

  for (std::size_t n = 1; n < size; ++n) {
    // Scaled multiply-add: align every product theta_k h_{n-k} to the largest
    // exponent in the row, then accumulate plain doubles.
    std::int64_t top = kZeroExponent;
    for (std::size_t k = 1; k <= n; ++k) {
      if (theta_m[k] != 0.0 && hm[n - k] != 0.0) {
        top = std::max(top, theta_e[k] + he[n - k]);
      }
    }
    if (top == kZeroExponent) {
      hm[n] = 0.0;
      he[n] = 0;
      continue;
    }
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      sum += theta_m[k] * hm[n - k] * pow2_nonpositive(theta_e[k] + he[n - k] - top);
    }
    const ScaledReal hn = ScaledReal::from_parts(sum / static_cast<double>(n), top);
    hm[n] = hn.mantissa();
    he[n] = hn.exponent();
  }

  std::vector<ScaledReal> h(size);
  for (std::size_t n = 0; n < size; ++n) {
    h[n] = ScaledReal::from_parts(hm[n], he[n]);
  }
  return HTable(w, std::move(h));
}

}  // namespace cyclew
