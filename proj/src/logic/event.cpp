#include "doxa/error.hpp"
#include "doxa/logic.hpp"

#include <cassert>
#include <sstream>

namespace doxa
{

namespace
{

void require_same_width( const event& lhs, const event& rhs )
{
    if ( lhs.width() != rhs.width() )
        throw signature_mismatch( "events of width " + std::to_string( lhs.width() ) + " and " +
                                  std::to_string( rhs.width() ) );
}

} // namespace

event event::full_of( const signature& sig )
{
    return full( sig.valuation_count() );
}

event event::full( std::size_t width )
{
    event e( width );
    e._bits.set();
    return e;
}

event event::from_mask( std::size_t width, std::uint64_t mask )
{
    assert( width <= 64 );
    event e( width );
    for ( std::size_t i = 0; i < width; ++i )
        if ( ( mask >> i ) & 1U )
            e._bits.set( i );
    return e;
}

event event::from_indices( std::size_t width, std::span<const std::size_t> indices )
{
    event e( width );
    for ( const auto v : indices )
    {
        if ( v >= width )
            throw format_error( "valuation index " + std::to_string( v ) + " out of range for width " +
                                std::to_string( width ) );
        e._bits.set( v );
    }
    return e;
}

std::optional<std::size_t> event::first() const
{
    const auto pos = _bits.find_first();
    if ( pos == boost::dynamic_bitset<std::uint64_t>::npos )
        return std::nullopt;
    return pos;
}

bool event::is_subset_of( const event& other ) const
{
    require_same_width( *this, other );
    return _bits.is_subset_of( other._bits );
}

bool event::intersects( const event& other ) const
{
    require_same_width( *this, other );
    return _bits.intersects( other._bits );
}

std::uint64_t event::to_mask() const
{
    assert( width() <= 64 );
    std::uint64_t mask = 0;
    for ( auto i = _bits.find_first(); i != boost::dynamic_bitset<std::uint64_t>::npos; i = _bits.find_next( i ) )
        mask |= std::uint64_t{ 1 } << i;
    return mask;
}

std::vector<std::size_t> event::indices() const
{
    std::vector<std::size_t> out;
    out.reserve( _bits.count() );
    for ( auto i = _bits.find_first(); i != boost::dynamic_bitset<std::uint64_t>::npos; i = _bits.find_next( i ) )
        out.push_back( i );
    return out;
}

event& event::operator&=( const event& other )
{
    require_same_width( *this, other );
    _bits &= other._bits;
    return *this;
}

event& event::operator|=( const event& other )
{
    require_same_width( *this, other );
    _bits |= other._bits;
    return *this;
}

event& event::operator-=( const event& other )
{
    require_same_width( *this, other );
    _bits -= other._bits;
    return *this;
}

bool event::operator<( const event& other ) const
{
    if ( width() != other.width() )
        return width() < other.width();
    return _bits < other._bits;
}

bool canonical_less( const event& lhs, const event& rhs )
{
    if ( lhs.count() != rhs.count() )
        return lhs.count() < rhs.count();
    return lhs.indices() < rhs.indices();
}

std::string to_string( const event& e )
{
    std::ostringstream out;
    out << '[';
    bool first = true;
    for ( const auto v : e.indices() )
    {
        if ( !first )
            out << ',';
        out << v;
        first = false;
    }
    out << ']';
    return out.str();
}

} // namespace doxa
