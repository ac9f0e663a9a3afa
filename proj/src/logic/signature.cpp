#include "doxa/error.hpp"
#include "doxa/logic.hpp"

#include <algorithm>
#include <cctype>

namespace doxa
{

bool is_identifier( std::string_view name )
{
    if ( name.empty() || !std::isalpha( static_cast<unsigned char>( name.front() ) ) )
        return false;
    return std::all_of( name.begin(), name.end(), []( char c ) {
        return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_';
    } );
}

signature::signature( std::vector<std::string> atoms ) : _atoms{ std::move( atoms ) }
{
    if ( _atoms.empty() || _atoms.size() > max_atoms )
        throw format_error( "signature must have between 1 and 16 atoms, got " + std::to_string( _atoms.size() ) );

    for ( std::size_t i = 0; i < _atoms.size(); ++i )
    {
        if ( !is_identifier( _atoms[ i ] ) )
            throw format_error( "invalid atom name '" + _atoms[ i ] + "'" );
        for ( std::size_t j = 0; j < i; ++j )
            if ( _atoms[ j ] == _atoms[ i ] )
                throw format_error( "duplicate atom name '" + _atoms[ i ] + "'" );
    }
}

std::optional<std::size_t> signature::index_of( std::string_view name ) const
{
    const auto it = std::find( _atoms.begin(), _atoms.end(), name );
    if ( it == _atoms.end() )
        return std::nullopt;
    return static_cast<std::size_t>( it - _atoms.begin() );
}

} // namespace doxa
