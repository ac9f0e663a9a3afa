#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace doxa
{

// Base of every error raised by the library. Callers that only care about
// "something in the input was wrong" can catch this one type.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class syntax_error : public error
{
    std::size_t _offset;
    std::string _expected;

public:
    syntax_error( std::size_t offset, std::string expected, const std::string& found )
            : error( "syntax error at offset " + std::to_string( offset ) + ": expected " + expected + ", found " +
                     found ),
              _offset{ offset }, _expected{ std::move( expected ) }
    {
    }

    [[nodiscard]] std::size_t offset() const { return _offset; }
    [[nodiscard]] const std::string& expected() const { return _expected; }
};

class unknown_atom : public error
{
    std::size_t _offset;
    std::string _name;

public:
    unknown_atom( std::size_t offset, std::string name )
            : error( "unknown atom '" + name + "' at offset " + std::to_string( offset ) ), _offset{ offset },
              _name{ std::move( name ) }
    {
    }

    [[nodiscard]] std::size_t offset() const { return _offset; }
    [[nodiscard]] const std::string& name() const { return _name; }
};

// Formula uses conditionals or belief outside the restricted modal fragment.
class nesting_error : public error
{
public:
    using error::error;
};

class missing_bridge : public error
{
public:
    using error::error;
};

// An explicit selection table lacks an entry on its declared domain.
class domain_error : public error
{
public:
    using error::error;
};

class outside_partial_domain : public error
{
public:
    using error::error;
};

class generation_exhausted : public error
{
public:
    using error::error;
};

class partial_table : public error
{
public:
    using error::error;
};

class signature_mismatch : public error
{
public:
    using error::error;
};

class postulate_violation : public error
{
public:
    using error::error;
};

class ill_formed_relation : public error
{
public:
    using error::error;
};

// Structurally invalid model, table or file contents.
class format_error : public error
{
public:
    using error::error;
};

} // namespace doxa
