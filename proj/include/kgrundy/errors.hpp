#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgrundy
{
    /// Base of every error the library throws deliberately.
    class Error : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// Invalid family parameters, out-of-range vertex ids, bad arguments.
    class ParameterError : public Error
    {
        public:
            using Error::Error;
    };

    class ParseError : public Error
    {
        public:
            ParseError(const std::string & what, std::size_t offset) :
                Error(what + " (at byte " + std::to_string(offset) + ")"),
                _offset(offset)
            {
            }

            auto offset() const -> std::size_t { return _offset; }

        private:
            std::size_t _offset;
    };

    /// The instance is too large for exhaustive search under the current guard.
    class CapacityError : public Error
    {
        public:
            using Error::Error;
    };

    /// An operation was called outside its precondition (e.g. Z with k > delta).
    class PreconditionError : public Error
    {
        public:
            using Error::Error;
    };

    /// A closed form was requested outside the hypotheses of its theorem.
    class InapplicableError : public Error
    {
        public:
            InapplicableError(const std::string & constraint) :
                Error("closed form not applicable: requires " + constraint),
                _constraint(constraint)
            {
            }

            auto constraint() const -> const std::string & { return _constraint; }

        private:
            std::string _constraint;
    };

    /// Something the mathematics says cannot happen did happen; indicates a bug.
    class InternalError : public std::logic_error
    {
        public:
            using std::logic_error::logic_error;
    };
}
