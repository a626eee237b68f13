#ifndef OCTT_CHECK_HPP
#define OCTT_CHECK_HPP

#include <sstream>
#include <stdexcept>
#include <string>

// Failure of a DOMAIN_CHECK means the caller passed arguments outside the
// documented domain; failure of a LOGIC_CHECK means an internal identity that
// must hold by mathematics was violated, i.e. a bug.
#define OCTT_STRINGIZE_DETAIL(x) #x
#define OCTT_STRINGIZE(x) OCTT_STRINGIZE_DETAIL(x)

#define DOMAIN_CHECK(cond)                                                     \
    do {                                                                       \
        if (!(cond))                                                           \
            throw std::domain_error("domain check failed: " #cond " at "       \
                                    __FILE__ ":" OCTT_STRINGIZE(__LINE__));    \
    } while (0)

#define LOGIC_CHECK(cond)                                                      \
    do {                                                                       \
        if (!(cond))                                                           \
            throw std::logic_error("logic check failed: " #cond " at "         \
                                   __FILE__ ":" OCTT_STRINGIZE(__LINE__));     \
    } while (0)

#endif
