#include "cavsim/circuit_io.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace cavsim {

namespace {

std::string kind_name(ParseErrorKind k)
{
    switch (k) {
    case ParseErrorKind::Syntax: return "syntax error";
    case ParseErrorKind::UnknownElement: return "unknown element";
    case ParseErrorKind::UnregisteredLocation: return "unregistered location";
    case ParseErrorKind::DuplicatePort: return "duplicate port";
    }
    return "error";
}

std::string format_message(ParseErrorKind kind, int line, int column,
                           const std::string& message)
{
    std::ostringstream os;
    os << "line " << line << ", col " << column << ": " << kind_name(kind)
       << ": " << message;
    return os.str();
}

struct Token {
    std::string text;
    int column;  // 1-based
};

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'
        || c == '.';
}

std::vector<Token> lex_line(const std::string& line, int line_no)
{
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '=' || c == ',') {
            out.push_back({std::string(1, c), static_cast<int>(i) + 1});
            ++i;
            continue;
        }
        if (ident_char(c)) {
            size_t j = i;
            while (j < line.size() && ident_char(line[j]))
                ++j;
            out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
            i = j;
            continue;
        }
        throw ParseError(ParseErrorKind::Syntax, line_no, static_cast<int>(i) + 1,
                         std::string("unexpected character '") + c + "'");
    }
    return out;
}

/// Cursor over one line's tokens with positioned error reporting.
class LineReader {
public:
    LineReader(std::vector<Token> tokens, int line_no, int line_len)
        : tokens_(std::move(tokens)), line_(line_no), end_col_(line_len + 1)
    {
    }

    bool done() const { return pos_ >= tokens_.size(); }
    int line() const { return line_; }

    int next_column() const
    {
        return done() ? end_col_ : tokens_[pos_].column;
    }

    Token expect_ident(const std::string& what)
    {
        if (done())
            fail(ParseErrorKind::Syntax, "expected " + what);
        Token t = tokens_[pos_];
        if (t.text == "=" || t.text == ",")
            fail(ParseErrorKind::Syntax, "expected " + what + ", got '" + t.text + "'");
        ++pos_;
        return t;
    }

    void expect_punct(char c)
    {
        if (done() || tokens_[pos_].text != std::string(1, c))
            fail(ParseErrorKind::Syntax, std::string("expected '") + c + "'");
        ++pos_;
    }

    Token expect_key(const std::string& key)
    {
        Token t = expect_ident("'" + key + "='");
        if (t.text != key)
            throw ParseError(ParseErrorKind::Syntax, line_, t.column,
                             "expected key '" + key + "', got '" + t.text + "'");
        expect_punct('=');
        return expect_ident("value for '" + key + "'");
    }

    int expect_int(const std::string& what)
    {
        Token t = expect_ident(what);
        try {
            size_t used = 0;
            const int v = std::stoi(t.text, &used);
            if (used != t.text.size())
                throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ParseError(ParseErrorKind::Syntax, line_, t.column,
                             "expected integer for " + what + ", got '" + t.text + "'");
        }
    }

    void expect_end()
    {
        if (!done())
            fail(ParseErrorKind::Syntax,
                 "unexpected trailing token '" + tokens_[pos_].text + "'");
    }

    [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg) const
    {
        throw ParseError(kind, line_, next_column(), msg);
    }

private:
    std::vector<Token> tokens_;
    size_t pos_ = 0;
    int line_;
    int end_col_;
};

int lookup_location(const CircuitSpec& spec, const Token& name, int line)
{
    if (auto id = spec.find_location(name.text))
        return *id;
    throw ParseError(ParseErrorKind::UnregisteredLocation, line, name.column,
                     "location '" + name.text + "' is not declared");
}

int lookup_atom(const CircuitSpec& spec, int idx, const Token& tok, int line)
{
    if (idx < 0 || idx >= spec.atom_count())
        throw ParseError(ParseErrorKind::UnregisteredLocation, line, tok.column,
                         "atom index " + std::to_string(idx) + " out of range (atoms "
                             + std::to_string(spec.atom_count()) + ")");
    return idx;
}

} // namespace

ParseError::ParseError(ParseErrorKind kind_, int line_, int column_,
                       const std::string& message)
    : std::runtime_error(format_message(kind_, line_, column_, message)),
      kind(kind_), line(line_), column(column_)
{
}

CircuitSpec parse_circuit(const std::string& text)
{
    std::optional<CircuitSpec> spec;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    int last_line = 1;

    while (std::getline(in, raw)) {
        ++line_no;
        last_line = line_no;
        auto tokens = lex_line(raw, line_no);
        if (tokens.empty())
            continue;
        LineReader r(std::move(tokens), line_no, static_cast<int>(raw.size()));
        const Token head = r.expect_ident("directive");

        if (head.text == "atoms") {
            if (spec)
                throw ParseError(ParseErrorKind::Syntax, line_no, head.column,
                                 "duplicate 'atoms' declaration");
            const int n_col = r.next_column();
            const int n = r.expect_int("atom count");
            if (n < 1 || n > 8)
                throw ParseError(ParseErrorKind::Syntax, line_no, n_col,
                                 "atom count must be between 1 and 8");
            r.expect_end();
            spec.emplace(n);
            continue;
        }

        if (!spec)
            throw ParseError(ParseErrorKind::Syntax, line_no, head.column,
                             "'atoms <n>' must come first");

        if (head.text == "path") {
            const Token name = r.expect_ident("path name");
            r.expect_end();
            if (spec->find_location(name.text))
                throw ParseError(ParseErrorKind::Syntax, line_no, name.column,
                                 "duplicate location name '" + name.text + "'");
            spec->add_location(name.text);
        } else if (head.text == "port") {
            const Token role = r.expect_ident("port role (in|out|discard)");
            const Token name = r.expect_ident("port name");
            r.expect_end();
            if (spec->find_location(name.text))
                throw ParseError(ParseErrorKind::Syntax, line_no, name.column,
                                 "duplicate location name '" + name.text + "'");
            if (role.text == "in") {
                if (spec->input_port() >= 0)
                    throw ParseError(ParseErrorKind::DuplicatePort, line_no, role.column,
                                     "input port already declared");
                spec->add_input_port(name.text);
            } else if (role.text == "out") {
                if (spec->output_port() >= 0)
                    throw ParseError(ParseErrorKind::DuplicatePort, line_no, role.column,
                                     "output port already declared");
                spec->add_output_port(name.text);
            } else if (role.text == "discard") {
                if (spec->discard_port() >= 0)
                    throw ParseError(ParseErrorKind::DuplicatePort, line_no, role.column,
                                     "discard port already declared");
                spec->add_discard_port(name.text);
            } else {
                throw ParseError(ParseErrorKind::Syntax, line_no, role.column,
                                 "port role must be in, out or discard");
            }
        } else if (head.text == "cpbs") {
            const Token a = r.expect_key("in");
            r.expect_punct(',');
            const Token b = r.expect_ident("second input");
            const Token c = r.expect_key("out");
            r.expect_punct(',');
            const Token d = r.expect_ident("second output");
            r.expect_end();
            spec->add_cpbs(lookup_location(*spec, a, line_no),
                           lookup_location(*spec, b, line_no),
                           lookup_location(*spec, c, line_no),
                           lookup_location(*spec, d, line_no));
        } else if (head.text == "hwp") {
            const Token p = r.expect_key("path");
            r.expect_end();
            spec->add_photon_hadamard(lookup_location(*spec, p, line_no));
        } else if (head.text == "sigmax") {
            const Token p = r.expect_key("path");
            r.expect_end();
            spec->add_photon_sigma_x(lookup_location(*spec, p, line_no));
        } else if (head.text == "atomh") {
            const Token key = r.expect_ident("'atom='");
            if (key.text != "atom")
                throw ParseError(ParseErrorKind::Syntax, line_no, key.column,
                                 "expected key 'atom'");
            r.expect_punct('=');
            const int col = r.next_column();
            const int idx = r.expect_int("atom index");
            r.expect_end();
            spec->add_atom_hadamard(
                lookup_atom(*spec, idx, Token{"", col}, line_no));
        } else if (head.text == "cavity") {
            const Token p = r.expect_key("path");
            const Token key = r.expect_ident("'atom='");
            if (key.text != "atom")
                throw ParseError(ParseErrorKind::Syntax, line_no, key.column,
                                 "expected key 'atom'");
            r.expect_punct('=');
            const int col = r.next_column();
            const int idx = r.expect_int("atom index");
            r.expect_end();
            spec->add_cavity_scatter(lookup_location(*spec, p, line_no),
                                     lookup_atom(*spec, idx, Token{"", col}, line_no));
        } else if (head.text == "relabel") {
            const Token from = r.expect_key("from");
            const Token to = r.expect_key("to");
            r.expect_end();
            spec->add_relabel(lookup_location(*spec, from, line_no),
                              lookup_location(*spec, to, line_no));
        } else if (head.text == "checkpoint") {
            const Token label = r.expect_ident("checkpoint label");
            r.expect_end();
            spec->add_checkpoint(label.text);
        } else {
            throw ParseError(ParseErrorKind::UnknownElement, line_no, head.column,
                             "unknown directive '" + head.text + "'");
        }
    }

    if (!spec)
        throw ParseError(ParseErrorKind::Syntax, last_line, 1,
                         "missing 'atoms <n>' declaration");
    if (spec->input_port() < 0)
        throw ParseError(ParseErrorKind::Syntax, last_line, 1,
                         "no input port declared");
    if (spec->output_port() < 0)
        throw ParseError(ParseErrorKind::Syntax, last_line, 1,
                         "no output port declared");
    return *spec;
}

std::string serialize_circuit(const CircuitSpec& spec)
{
    std::ostringstream os;
    os << "atoms " << spec.atom_count() << "\n";
    const auto& names = spec.location_names();
    for (int i = 0; i < spec.location_count(); ++i) {
        const auto& name = names[static_cast<size_t>(i)];
        if (i == spec.input_port())
            os << "port in " << name << "\n";
        else if (i == spec.output_port())
            os << "port out " << name << "\n";
        else if (i == spec.discard_port())
            os << "port discard " << name << "\n";
        else
            os << "path " << name << "\n";
    }
    for (const auto& e : spec.elements()) {
        switch (e.kind) {
        case ElementKind::Cpbs:
            os << "cpbs in=" << names[static_cast<size_t>(e.locs[0])] << ","
               << names[static_cast<size_t>(e.locs[1])]
               << " out=" << names[static_cast<size_t>(e.locs[2])] << ","
               << names[static_cast<size_t>(e.locs[3])] << "\n";
            break;
        case ElementKind::PhotonHadamard:
            os << "hwp path=" << names[static_cast<size_t>(e.locs[0])] << "\n";
            break;
        case ElementKind::PhotonSigmaX:
            os << "sigmax path=" << names[static_cast<size_t>(e.locs[0])] << "\n";
            break;
        case ElementKind::AtomHadamard:
            os << "atomh atom=" << e.atom << "\n";
            break;
        case ElementKind::CavityScatter:
            os << "cavity path=" << names[static_cast<size_t>(e.locs[0])]
               << " atom=" << e.atom << "\n";
            break;
        case ElementKind::Relabel:
            os << "relabel from=" << names[static_cast<size_t>(e.locs[0])]
               << " to=" << names[static_cast<size_t>(e.locs[1])] << "\n";
            break;
        case ElementKind::Checkpoint:
            os << "checkpoint " << e.label << "\n";
            break;
        }
    }
    return os.str();
}

} // namespace cavsim
