#ifndef SSVERIFY_ERROR_HPP_
#define SSVERIFY_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ssverify {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define SSVERIFY_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
  public:                                                             \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  };

SSVERIFY_DEFINE_ERROR(InfiniteQuotient)
SSVERIFY_DEFINE_ERROR(DimensionMismatch)
SSVERIFY_DEFINE_ERROR(InvalidCartan)
SSVERIFY_DEFINE_ERROR(NonFiniteSystem)
SSVERIFY_DEFINE_ERROR(BadIndex)
SSVERIFY_DEFINE_ERROR(NotFiniteOrder)
SSVERIFY_DEFINE_ERROR(NotSemisimple)
SSVERIFY_DEFINE_ERROR(OrbitBound)
SSVERIFY_DEFINE_ERROR(QuotientTooLarge)
SSVERIFY_DEFINE_ERROR(CaseMismatch)
SSVERIFY_DEFINE_ERROR(ParseError)
SSVERIFY_DEFINE_ERROR(Overflow)

#undef SSVERIFY_DEFINE_ERROR

} // namespace ssverify

#endif // SSVERIFY_ERROR_HPP_
