#ifndef SHIFTALG_RING_HPP
#define SHIFTALG_RING_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "shiftalg/base.hpp"

namespace shiftalg {

// Coefficient rings: Z and Q with exact gmp arithmetic, F_p for prime p.
// All three are commutative, unital and indecomposable.
struct RingTag {
  enum Kind { Z, Q, Fp } kind = Z;
  std::uint64_t p = 0;  // Fp modulus

  bool operator==(const RingTag&) const = default;
  std::string name() const {
    switch (kind) {
      case Z: return "Z";
      case Q: return "Q";
      case Fp: return "F" + std::to_string(p);
    }
    return "?";
  }
};

class RingElem {
 public:
  RingElem() : tag_{RingTag::Z, 0}, q_(0) {}
  RingElem(RingTag tag, long v) : tag_(tag), q_(v) { normalize(); }
  RingElem(RingTag tag, mpq_class v) : tag_(tag), q_(std::move(v)) { normalize(); }

  static RingElem zero(RingTag t) { return RingElem(t, 0); }
  static RingElem one(RingTag t) { return RingElem(t, 1); }

  const RingTag& tag() const { return tag_; }
  bool is_zero() const { return q_ == 0; }
  bool is_one() const { return q_ == 1; }
  const mpq_class& value() const { return q_; }

  RingElem operator+(const RingElem& o) const { return combined(o, q_ + o.q_); }
  RingElem operator-(const RingElem& o) const { return combined(o, q_ - o.q_); }
  RingElem operator*(const RingElem& o) const { return combined(o, q_ * o.q_); }
  RingElem operator-() const { return RingElem(tag_, -q_); }

  bool operator==(const RingElem& o) const { return tag_ == o.tag_ && q_ == o.q_; }
  bool operator!=(const RingElem& o) const { return !(*this == o); }

  std::string str() const { return q_.get_str(); }

 private:
  RingElem combined(const RingElem& o, mpq_class v) const {
    if (tag_ != o.tag_) fail(Errc::RingMismatch, "mixed rings " + tag_.name() + "/" + o.tag_.name());
    return RingElem(tag_, std::move(v));
  }
  void normalize() {
    q_.canonicalize();
    if (tag_.kind == RingTag::Fp) {
      if (q_.get_den() != 1) fail(Errc::RingMismatch, "non-integer value in " + tag_.name());
      mpz_class m(static_cast<unsigned long>(tag_.p));
      mpz_class r = q_.get_num() % m;
      if (r < 0) r += m;
      q_ = mpq_class(r);
    } else if (tag_.kind == RingTag::Z) {
      if (q_.get_den() != 1) fail(Errc::RingMismatch, "non-integer value in Z");
    }
  }

  RingTag tag_;
  mpq_class q_;
};

}  // namespace shiftalg

#endif
