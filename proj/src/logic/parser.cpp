#include "parse_tree.hpp"

#include "doxa/error.hpp"

#include <cctype>

namespace doxa::detail
{

namespace
{

enum class token_kind
{
    identifier,
    negation,
    conjunction,
    disjunction,
    implication,
    equivalence,
    conditional,
    left_paren,
    right_paren,
    end,
};

struct token
{
    token_kind kind;
    std::size_t offset;
    std::string_view text;
};

class lexer
{
    std::string_view _text;
    std::size_t _pos = 0;

public:
    explicit lexer( std::string_view text ) : _text{ text } {}

    token next()
    {
        while ( _pos < _text.size() && std::isspace( static_cast<unsigned char>( _text[ _pos ] ) ) )
            ++_pos;

        const auto start = _pos;
        if ( _pos == _text.size() )
            return { token_kind::end, start, {} };

        const char c = _text[ _pos ];
        if ( std::isalpha( static_cast<unsigned char>( c ) ) )
        {
            while ( _pos < _text.size() &&
                    ( std::isalnum( static_cast<unsigned char>( _text[ _pos ] ) ) || _text[ _pos ] == '_' ) )
                ++_pos;
            return { token_kind::identifier, start, _text.substr( start, _pos - start ) };
        }

        const auto rest = _text.substr( _pos );
        auto symbol = [ & ]( token_kind kind, std::size_t length ) {
            _pos += length;
            return token{ kind, start, _text.substr( start, length ) };
        };

        if ( rest.starts_with( "<->" ) )
            return symbol( token_kind::equivalence, 3 );
        if ( rest.starts_with( "->" ) )
            return symbol( token_kind::implication, 2 );

        switch ( c )
        {
        case '~':
        case '!': return symbol( token_kind::negation, 1 );
        case '&': return symbol( token_kind::conjunction, 1 );
        case '|': return symbol( token_kind::disjunction, 1 );
        case '>': return symbol( token_kind::conditional, 1 );
        case '(': return symbol( token_kind::left_paren, 1 );
        case ')': return symbol( token_kind::right_paren, 1 );
        default: break;
        }
        throw syntax_error( start, "a formula token", "'" + std::string( 1, c ) + "'" );
    }
};

std::string describe( const token& t )
{
    if ( t.kind == token_kind::end )
        return "end of input";
    return "'" + std::string( t.text ) + "'";
}

node_ptr make( node_kind kind, node_ptr left, node_ptr right = nullptr, std::size_t atom = 0 )
{
    return std::make_shared<const formula_node>( formula_node{ kind, atom, std::move( left ), std::move( right ) } );
}

class parser
{
    lexer _lexer;
    token _current;
    const signature& _sig;
    bool _modal;

    void advance() { _current = _lexer.next(); }

    bool accept( token_kind kind )
    {
        if ( _current.kind != kind )
            return false;
        advance();
        return true;
    }

    bool at_belief() const { return _modal && _current.kind == token_kind::identifier && _current.text == "B"; }

public:
    parser( std::string_view text, const signature& sig, bool modal )
            : _lexer{ text }, _current{ token_kind::end, 0, {} }, _sig{ sig }, _modal{ modal }
    {
        advance();
    }

    node_ptr parse()
    {
        auto root = parse_top();
        if ( _current.kind != token_kind::end )
            throw syntax_error( _current.offset, _modal ? "an operator or end of input" : "a Boolean operator or end of input",
                                describe( _current ) );
        return root;
    }

private:
    node_ptr parse_top() { return _modal ? parse_conditional() : parse_equivalence(); }

    node_ptr parse_conditional()
    {
        auto lhs = parse_equivalence();
        if ( accept( token_kind::conditional ) )
            return make( node_kind::conditional, lhs, parse_conditional() );
        return lhs;
    }

    node_ptr parse_equivalence()
    {
        auto lhs = parse_implication();
        while ( accept( token_kind::equivalence ) )
            lhs = make( node_kind::equivalence, lhs, parse_implication() );
        return lhs;
    }

    node_ptr parse_implication()
    {
        auto lhs = parse_disjunction();
        if ( accept( token_kind::implication ) )
            return make( node_kind::implication, lhs, parse_implication() );
        return lhs;
    }

    node_ptr parse_disjunction()
    {
        auto lhs = parse_conjunction();
        while ( accept( token_kind::disjunction ) )
            lhs = make( node_kind::disjunction, lhs, parse_conjunction() );
        return lhs;
    }

    node_ptr parse_conjunction()
    {
        auto lhs = parse_unary();
        while ( accept( token_kind::conjunction ) )
            lhs = make( node_kind::conjunction, lhs, parse_unary() );
        return lhs;
    }

    node_ptr parse_unary()
    {
        if ( accept( token_kind::negation ) )
            return make( node_kind::negation, parse_unary() );
        if ( at_belief() )
        {
            advance();
            return make( node_kind::belief, parse_unary() );
        }
        return parse_primary();
    }

    node_ptr parse_primary()
    {
        const auto t = _current;
        if ( t.kind == token_kind::identifier )
        {
            const auto index = _sig.index_of( t.text );
            if ( !index )
                throw unknown_atom( t.offset, std::string( t.text ) );
            advance();
            return make( node_kind::atom, nullptr, nullptr, *index );
        }
        if ( accept( token_kind::left_paren ) )
        {
            auto inner = parse_top();
            if ( !accept( token_kind::right_paren ) )
                throw syntax_error( _current.offset, "')'", describe( _current ) );
            return inner;
        }
        throw syntax_error( t.offset, "an atom, '~', '!' or '('", describe( t ) );
    }
};

} // namespace

node_ptr parse_tree( std::string_view text, const signature& sig, bool modal )
{
    return parser( text, sig, modal ).parse();
}

} // namespace doxa::detail

namespace doxa
{

formula parse_formula( std::string_view text, const signature& sig )
{
    return formula::from_node( detail::parse_tree( text, sig, false ) );
}

} // namespace doxa
