#pragma once

// Ring backend contract.  A backend supplies exact element arithmetic, the
// element map into its opposite ring, and the two matrix primitives every
// higher layer is built from: left kernels and left division.  All module
// code works in the left/row convention; a right module is represented as a
// left module over the opposite backend instance, tagged with Side::Right.

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>

namespace halg {

enum class Side { Left, Right };

inline Side flip(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

inline const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

// ---------------------------------------------------------------------------
// Errors

enum class ErrorKind {
    PreconditionFailed, // exit 2
    MalformedInput,     // exit 3
    CapabilityUnavailable, // exit 4
    Inconclusive,       // exit 4
    NotAdmissible,
    BadRelation,
    NotContained,
    LiftFailed,
    MixedRings,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Raised when an instance-level inequality required by a construction fails;
// carries the violated quantity and the offending index.
class PreconditionFailed : public Error {
public:
    PreconditionFailed(std::string what_failed, int index, std::string msg)
        : Error(ErrorKind::PreconditionFailed, std::move(msg)),
          quantity(std::move(what_failed)), index(index) {}
    std::string quantity;
    int index;
};

// ---------------------------------------------------------------------------
// Integer backend

class ZRing {
public:
    using Elem = mpz_class;

    static constexpr bool is_fd = false;
    static constexpr const char* kind = "integers";

    static const std::shared_ptr<const ZRing>& instance()
    {
        static std::shared_ptr<const ZRing> inst(new ZRing());
        return inst;
    }

    std::shared_ptr<const ZRing> opposite() const { return instance(); }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem op_elem(const Elem& a) const { return a; } // commutative

    std::string to_string(const Elem& a) const { return a.get_str(); }
    Elem parse(const std::string& s) const
    {
        try {
            return mpz_class(s);
        } catch (const std::invalid_argument&) {
            throw Error(ErrorKind::MalformedInput, "bad integer literal: " + s);
        }
    }

private:
    ZRing() = default;
};

} // namespace halg
