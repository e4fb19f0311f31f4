#include "kohnen/sieve.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include "kohnen/error.hpp"
#include "kohnen/parallel.hpp"

namespace kohnen::sieve {

namespace {

std::atomic<std::uint64_t> g_max_limit{1'000'000'000ULL};

constexpr char kCacheMagic[8] = {'K', 'Z', 'L', 'P', 'F', 'T', 'B', 'L'};

std::vector<std::uint32_t> small_primes(std::uint64_t bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

std::uint64_t value_of(const Factorization& f) {
  std::uint64_t n = 1;
  for (const auto& pp : f) {
    for (unsigned i = 0; i < pp.exponent; ++i) n *= pp.prime;
  }
  return n;
}

ArithmeticData arithmetic_data(Factorization f) {
  ArithmeticData d;
  d.omega = static_cast<unsigned>(f.size());
  bool squarefree = true;
  for (const auto& pp : f) {
    d.big_omega += pp.exponent;
    if (pp.exponent > 1) squarefree = false;
  }
  d.mu = squarefree ? ((d.omega % 2) ? -1 : 1) : 0;
  d.factors = std::move(f);
  return d;
}

std::uint64_t FactorSieve::max_limit() { return g_max_limit.load(); }
void FactorSieve::set_max_limit(std::uint64_t limit) { g_max_limit.store(limit); }

FactorSieve::FactorSieve(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) throw ValidationError("sieve limit must be at least 2");
  if (limit > max_limit() || limit >= (std::uint64_t{1} << 32)) {
    throw CapacityError("sieve limit " + std::to_string(limit) + " exceeds the configured maximum " +
                        std::to_string(std::min<std::uint64_t>(max_limit(), (std::uint64_t{1} << 32) - 1)));
  }
  lpf_.assign(limit + 1, 0);
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while ((root + 1) * (root + 1) <= limit) ++root;
  while (root * root > limit) --root;
  const auto base = small_primes(root);

  const std::uint64_t total = limit + 1;
  const std::size_t segments = static_cast<std::size_t>((total + kSegmentSize - 1) / kSegmentSize);
  parallel_for(segments, [&](std::size_t s) {
    const std::uint64_t lo = s * kSegmentSize;
    const std::uint64_t hi = std::min(total, lo + kSegmentSize);
    for (std::uint32_t p : base) {
      const std::uint64_t sq = std::uint64_t{p} * p;
      if (sq >= hi) break;
      std::uint64_t start = std::max(sq, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m < hi; m += p) {
        if (lpf_[m] == 0) lpf_[m] = static_cast<std::uint16_t>(p);
      }
    }
  });
}

void FactorSieve::check_range(std::uint64_t n) const {
  if (n == 0 || n > limit_) {
    throw ValidationError("argument " + std::to_string(n) + " outside sieve range [1, " + std::to_string(limit_) + "]");
  }
}

std::uint64_t FactorSieve::least_prime_factor(std::uint64_t n) const {
  check_range(n);
  if (n == 1) return 1;
  return lpf_[n] == 0 ? n : lpf_[n];
}

bool FactorSieve::is_prime(std::uint64_t n) const {
  check_range(n);
  return n >= 2 && lpf_[n] == 0;
}

Factorization FactorSieve::factorize(std::uint64_t n) const {
  check_range(n);
  Factorization out;
  while (n > 1) {
    const std::uint64_t p = lpf_[n] == 0 ? n : lpf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

ArithmeticData FactorSieve::arithmetic(std::uint64_t n) const { return arithmetic_data(factorize(n)); }

unsigned FactorSieve::omega(std::uint64_t n) const {
  check_range(n);
  unsigned count = 0;
  while (n > 1) {
    const std::uint64_t p = lpf_[n] == 0 ? n : lpf_[n];
    while (n % p == 0) n /= p;
    ++count;
  }
  return count;
}

unsigned FactorSieve::big_omega(std::uint64_t n) const {
  check_range(n);
  unsigned count = 0;
  while (n > 1) {
    n /= lpf_[n] == 0 ? n : lpf_[n];
    ++count;
  }
  return count;
}

int FactorSieve::mobius(std::uint64_t n) const { return arithmetic(n).mu; }

std::string FactorSieve::cache_file_name(std::uint64_t limit) {
  return "lpf_X" + std::to_string(limit) + "_S" + std::to_string(kSegmentSize) + "_v" +
         std::to_string(kFormatVersion) + ".bin";
}

void FactorSieve::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write sieve cache " + path.string());
  const std::uint64_t header[3] = {limit_, kSegmentSize, kFormatVersion};
  out.write(kCacheMagic, sizeof kCacheMagic);
  out.write(reinterpret_cast<const char*>(header), sizeof header);
  out.write(reinterpret_cast<const char*>(lpf_.data()), static_cast<std::streamsize>(lpf_.size() * sizeof(std::uint16_t)));
}

std::optional<FactorSieve> FactorSieve::load(const std::filesystem::path& path, std::uint64_t limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[sizeof kCacheMagic];
  std::uint64_t header[3];
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(header), sizeof header);
  if (!in || std::memcmp(magic, kCacheMagic, sizeof magic) != 0) return std::nullopt;
  if (header[0] != limit || header[1] != kSegmentSize || header[2] != kFormatVersion) return std::nullopt;
  FactorSieve sieve;
  sieve.limit_ = limit;
  sieve.lpf_.resize(limit + 1);
  in.read(reinterpret_cast<char*>(sieve.lpf_.data()), static_cast<std::streamsize>(sieve.lpf_.size() * sizeof(std::uint16_t)));
  if (!in) return std::nullopt;
  return sieve;
}

FactorSieve build_factor_sieve(std::uint64_t limit) {
  const char* dir = std::getenv("KOHNEN_SIEVE_CACHE");
  if (dir == nullptr || *dir == '\0') return FactorSieve(limit);
  const std::filesystem::path path = std::filesystem::path(dir) / FactorSieve::cache_file_name(limit);
  if (auto cached = FactorSieve::load(path, limit)) return std::move(*cached);
  FactorSieve sieve(limit);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto tmp = path.string() + ".tmp";
  try {
    sieve.save(tmp);
    std::filesystem::rename(tmp, path, ec);
  } catch (const ValidationError&) {
    // cache write failures are not fatal
  }
  return sieve;
}

bool is_almost_prime(std::uint64_t n, unsigned r, CountMode mode, const FactorSieve& sieve) {
  if (n < 2) return false;
  return (mode == CountMode::distinct ? sieve.omega(n) : sieve.big_omega(n)) <= r;
}

std::vector<std::uint64_t> almost_primes(std::uint64_t limit, unsigned r, CountMode mode, const FactorSieve& sieve) {
  if (limit > sieve.limit()) {
    throw PrecisionError("almost_primes limit beyond sieve range", sieve.limit());
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (is_almost_prime(n, r, mode, sieve)) out.push_back(n);
  }
  return out;
}

const char* to_string(CountMode mode) { return mode == CountMode::distinct ? "distinct" : "with-multiplicity"; }

}  // namespace kohnen::sieve
