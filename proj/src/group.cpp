#include "wclab/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "wclab/graph.hpp"

namespace wclab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n)
{
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::int64_t parse_int(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw Error("expected integer, got '" + std::string(s) + "'");
    return v;
}

// `(a,b,c)` or a bare integer.
std::vector<std::int64_t> parse_tuple(std::string_view s)
{
    s = trim(s);
    std::vector<std::int64_t> out;
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')')
            throw Error("unbalanced tuple '" + std::string(s) + "'");
        s = s.substr(1, s.size() - 2);
        for (auto& part : split_top_level(s))
            out.push_back(parse_int(part));
    } else {
        out.push_back(parse_int(s));
    }
    return out;
}

// Index of the single top-level occurrence of c, or npos.
std::size_t find_top_level(std::string_view s, char c)
{
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(' || ch == '[')
            ++depth;
        else if (ch == ')' || ch == ']')
            --depth;
        else if (ch == c && depth == 0)
            return i;
    }
    return std::string_view::npos;
}

std::string format_tuple(const std::vector<std::int64_t>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(v[i]);
    }
    return s + ")";
}

} // namespace

std::vector<std::string> split_top_level(std::string_view text, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : text) {
        if (ch == '(' || ch == '[')
            ++depth;
        else if (ch == ')' || ch == ']')
            --depth;
        if (ch == sep && depth == 0) {
            out.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty() || !out.empty())
        out.emplace_back(trim(cur));
    return out;
}

std::strong_ordering GroupElem::operator<=>(const GroupElem& other) const
{
    if (auto c = payload <=> other.payload; c != 0)
        return c;
    std::size_t n = std::min(parts.size(), other.parts.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = parts[i] <=> other.parts[i]; c != 0)
            return c;
    return parts.size() <=> other.parts.size();
}

bool GroupElem::operator==(const GroupElem& other) const
{
    return payload == other.payload && parts == other.parts;
}

GroupSpec GroupSpec::free_abelian(int d)
{
    if (d < 1)
        throw Error("Z^d needs d >= 1");
    return GroupSpec(Family::free_abelian, {d}, {});
}

GroupSpec GroupSpec::cyclic(std::int64_t n)
{
    if (n < 1)
        throw Error("Z/n needs n >= 1");
    return GroupSpec(Family::cyclic, {n}, {});
}

GroupSpec GroupSpec::torus(std::int64_t m, std::int64_t n)
{
    if (m < 1 || n < 1)
        throw Error("torus dimensions must be positive");
    return GroupSpec(Family::torus, {m, n}, {});
}

GroupSpec GroupSpec::free(int k)
{
    if (k < 1 || k > 26)
        throw Error("F_k needs 1 <= k <= 26");
    return GroupSpec(Family::free, {k}, {});
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors)
{
    if (factors.empty())
        throw Error("empty direct product");
    return GroupSpec(Family::product, {}, std::move(factors));
}

GroupSpec GroupSpec::parse(std::string_view text)
{
    text = trim(text);
    if (text.empty())
        throw Error("empty group spec");
    auto pieces = split_top_level(text, '*');
    if (pieces.size() > 1) {
        std::vector<GroupSpec> fs;
        for (auto& p : pieces)
            fs.push_back(parse(p));
        return product(std::move(fs));
    }
    if (text.front() == '(' && text.back() == ')')
        return parse(text.substr(1, text.size() - 2));
    if (text.front() == 'F')
        return free(static_cast<int>(parse_int(text.substr(1))));
    if (text == "Z")
        return free_abelian(1);
    if (text.starts_with("Z^"))
        return free_abelian(static_cast<int>(parse_int(text.substr(2))));
    if (text.starts_with("Z/")) {
        auto x = text.find("xZ/");
        if (x == std::string_view::npos)
            return cyclic(parse_int(text.substr(2)));
        return torus(parse_int(text.substr(2, x - 2)), parse_int(text.substr(x + 3)));
    }
    throw Error("unknown group spec '" + std::string(text) + "'");
}

std::string GroupSpec::to_string() const
{
    switch (family_) {
    case Family::free_abelian:
        return params_[0] == 1 ? "Z" : "Z^" + std::to_string(params_[0]);
    case Family::cyclic:
        return "Z/" + std::to_string(params_[0]);
    case Family::torus:
        return "Z/" + std::to_string(params_[0]) + "xZ/" + std::to_string(params_[1]);
    case Family::free:
        return "F" + std::to_string(params_[0]);
    case Family::product: {
        std::string s;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i)
                s += '*';
            bool paren = factors_[i].family_ == Family::product;
            s += paren ? "(" + factors_[i].to_string() + ")" : factors_[i].to_string();
        }
        return s;
    }
    }
    return {};
}

std::size_t GroupSpec::generator_count() const
{
    switch (family_) {
    case Family::free_abelian:
    case Family::free:
        return static_cast<std::size_t>(params_[0]);
    case Family::cyclic:
        return 1;
    case Family::torus:
        return 2;
    case Family::product: {
        std::size_t n = 0;
        for (auto& f : factors_)
            n += f.generator_count();
        return n;
    }
    }
    return 0;
}

GroupElem GroupSpec::identity() const
{
    GroupElem e;
    switch (family_) {
    case Family::free_abelian:
        e.payload.assign(static_cast<std::size_t>(params_[0]), 0);
        break;
    case Family::cyclic:
        e.payload = {0};
        break;
    case Family::torus:
        e.payload = {0, 0};
        break;
    case Family::free:
        break;
    case Family::product:
        for (auto& f : factors_)
            e.parts.push_back(f.identity());
        break;
    }
    return e;
}

std::vector<GroupElem> GroupSpec::generators() const
{
    std::vector<GroupElem> gens;
    switch (family_) {
    case Family::free_abelian:
        for (std::int64_t i = 0; i < params_[0]; ++i) {
            GroupElem g = identity();
            g.payload[static_cast<std::size_t>(i)] = 1;
            gens.push_back(std::move(g));
        }
        break;
    case Family::cyclic:
        gens.push_back(GroupElem{{mod(1, params_[0])}, {}});
        break;
    case Family::torus:
        gens.push_back(GroupElem{{mod(1, params_[0]), 0}, {}});
        gens.push_back(GroupElem{{0, mod(1, params_[1])}, {}});
        break;
    case Family::free:
        for (std::int64_t i = 0; i < params_[0]; ++i)
            gens.push_back(GroupElem{{2 * i}, {}});
        break;
    case Family::product:
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            for (auto& fg : factors_[j].generators()) {
                GroupElem g = identity();
                g.parts[j] = fg;
                gens.push_back(std::move(g));
            }
        }
        break;
    }
    return gens;
}

std::vector<std::string> GroupSpec::generator_names() const
{
    std::vector<std::string> names;
    switch (family_) {
    case Family::free:
        for (std::int64_t i = 0; i < params_[0]; ++i)
            names.emplace_back(1, static_cast<char>('a' + i));
        break;
    case Family::cyclic:
        names.emplace_back("g");
        break;
    case Family::free_abelian:
    case Family::torus:
        for (std::size_t i = 0; i < generator_count(); ++i)
            names.push_back("e" + std::to_string(i + 1));
        break;
    case Family::product:
        for (std::size_t j = 0; j < factors_.size(); ++j)
            for (auto& n : factors_[j].generator_names())
                names.push_back("f" + std::to_string(j + 1) + "." + n);
        break;
    }
    return names;
}

std::vector<GroupElem> GroupSpec::symmetric_generators() const
{
    std::set<GroupElem> s;
    for (auto& g : generators()) {
        s.insert(g);
        s.insert(inv(g));
    }
    return {s.begin(), s.end()};
}

bool GroupSpec::is_abelian() const
{
    switch (family_) {
    case Family::free:
        return params_[0] == 1;
    case Family::product:
        return std::all_of(factors_.begin(), factors_.end(),
                           [](const GroupSpec& f) { return f.is_abelian(); });
    default:
        return true;
    }
}

bool GroupSpec::contains(const GroupElem& g) const
{
    switch (family_) {
    case Family::free_abelian:
        return g.parts.empty() && g.payload.size() == static_cast<std::size_t>(params_[0]);
    case Family::cyclic:
        return g.parts.empty() && g.payload.size() == 1 && g.payload[0] >= 0 &&
               g.payload[0] < params_[0];
    case Family::torus:
        return g.parts.empty() && g.payload.size() == 2 && g.payload[0] >= 0 &&
               g.payload[0] < params_[0] && g.payload[1] >= 0 && g.payload[1] < params_[1];
    case Family::free: {
        if (!g.parts.empty())
            return false;
        for (std::size_t i = 0; i < g.payload.size(); ++i) {
            if (g.payload[i] < 0 || g.payload[i] >= 2 * params_[0])
                return false;
            if (i > 0 && (g.payload[i] ^ 1) == g.payload[i - 1])
                return false;
        }
        return true;
    }
    case Family::product:
        if (!g.payload.empty() || g.parts.size() != factors_.size())
            return false;
        for (std::size_t j = 0; j < factors_.size(); ++j)
            if (!factors_[j].contains(g.parts[j]))
                return false;
        return true;
    }
    return false;
}

void GroupSpec::require(const GroupElem& g) const
{
    if (!contains(g))
        throw Error("element does not belong to group " + to_string());
}

GroupElem GroupSpec::mul(const GroupElem& g, const GroupElem& h) const
{
    require(g);
    require(h);
    GroupElem r;
    switch (family_) {
    case Family::free_abelian:
        r.payload.resize(g.payload.size());
        for (std::size_t i = 0; i < g.payload.size(); ++i)
            r.payload[i] = g.payload[i] + h.payload[i];
        break;
    case Family::cyclic:
        r.payload = {mod(g.payload[0] + h.payload[0], params_[0])};
        break;
    case Family::torus:
        r.payload = {mod(g.payload[0] + h.payload[0], params_[0]),
                     mod(g.payload[1] + h.payload[1], params_[1])};
        break;
    case Family::free:
        r.payload = g.payload;
        for (auto letter : h.payload) {
            if (!r.payload.empty() && r.payload.back() == (letter ^ 1))
                r.payload.pop_back();
            else
                r.payload.push_back(letter);
        }
        break;
    case Family::product:
        for (std::size_t j = 0; j < factors_.size(); ++j)
            r.parts.push_back(factors_[j].mul(g.parts[j], h.parts[j]));
        break;
    }
    return r;
}

GroupElem GroupSpec::inv(const GroupElem& g) const
{
    require(g);
    GroupElem r;
    switch (family_) {
    case Family::free_abelian:
        for (auto v : g.payload)
            r.payload.push_back(-v);
        break;
    case Family::cyclic:
        r.payload = {mod(-g.payload[0], params_[0])};
        break;
    case Family::torus:
        r.payload = {mod(-g.payload[0], params_[0]), mod(-g.payload[1], params_[1])};
        break;
    case Family::free:
        r.payload.assign(g.payload.rbegin(), g.payload.rend());
        for (auto& l : r.payload)
            l ^= 1;
        break;
    case Family::product:
        for (std::size_t j = 0; j < factors_.size(); ++j)
            r.parts.push_back(factors_[j].inv(g.parts[j]));
        break;
    }
    return r;
}

GroupElem GroupSpec::pow(const GroupElem& g, std::int64_t e) const
{
    GroupElem base = e < 0 ? inv(g) : g;
    std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    GroupElem acc = identity();
    while (k) {
        if (k & 1)
            acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

std::int64_t GroupSpec::word_length(const GroupElem& g) const
{
    require(g);
    switch (family_) {
    case Family::free_abelian: {
        std::int64_t s = 0;
        for (auto v : g.payload)
            s += v < 0 ? -v : v;
        return s;
    }
    case Family::cyclic:
        return std::min(g.payload[0], params_[0] - g.payload[0]);
    case Family::torus:
        return std::min(g.payload[0], params_[0] - g.payload[0]) +
               std::min(g.payload[1], params_[1] - g.payload[1]);
    case Family::free:
        return static_cast<std::int64_t>(g.payload.size());
    case Family::product: {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < factors_.size(); ++j)
            s += factors_[j].word_length(g.parts[j]);
        return s;
    }
    }
    return 0;
}

GroupElem GroupSpec::elem(std::vector<std::int64_t> payload) const
{
    GroupElem g;
    switch (family_) {
    case Family::cyclic:
        if (payload.size() != 1)
            throw Error("cyclic element needs one residue");
        g.payload = {mod(payload[0], params_[0])};
        break;
    case Family::torus:
        if (payload.size() != 2)
            throw Error("torus element needs two residues");
        g.payload = {mod(payload[0], params_[0]), mod(payload[1], params_[1])};
        break;
    case Family::free:
        for (auto l : payload) {
            if (!g.payload.empty() && g.payload.back() == (l ^ 1))
                g.payload.pop_back();
            else
                g.payload.push_back(l);
        }
        break;
    default:
        g.payload = std::move(payload);
    }
    require(g);
    return g;
}

GroupElem GroupSpec::letter(int generator, bool inverse) const
{
    if (family_ != Family::free || generator < 0 || generator >= params_[0])
        throw Error("letter() needs a free group generator index");
    return GroupElem{{2 * generator + (inverse ? 1 : 0)}, {}};
}

std::string GroupSpec::format(const GroupElem& g) const
{
    require(g);
    switch (family_) {
    case Family::free_abelian:
        return "Z" + std::to_string(params_[0]) + ":" + format_tuple(g.payload);
    case Family::cyclic:
        return "Z" + std::to_string(params_[0]) + ":" + std::to_string(g.payload[0]);
    case Family::torus:
        return "T" + std::to_string(params_[0]) + "x" + std::to_string(params_[1]) + ":" +
               format_tuple(g.payload);
    case Family::free: {
        std::string s = "F" + std::to_string(params_[0]) + ":";
        if (g.payload.empty())
            return s + "e";
        for (auto l : g.payload) {
            char c = static_cast<char>('a' + l / 2);
            s += (l & 1) ? static_cast<char>(std::toupper(c)) : c;
        }
        return s;
    }
    case Family::product: {
        std::string s = "P:[";
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            if (j)
                s += ';';
            s += factors_[j].format(g.parts[j]);
        }
        return s + "]";
    }
    }
    return {};
}

GroupElem GroupSpec::parse_elem(std::string_view text) const
{
    text = trim(text);
    auto colon = find_top_level(text, ':');
    if (colon != std::string_view::npos) {
        std::string_view tag = text.substr(0, colon);
        std::string expected = format(identity());
        expected = expected.substr(0, expected.find(':'));
        if (tag != expected)
            throw Error("element tag '" + std::string(tag) + "' does not match group " +
                        to_string());
        text = trim(text.substr(colon + 1));
    }
    switch (family_) {
    case Family::free_abelian: {
        auto v = parse_tuple(text);
        if (v.size() != static_cast<std::size_t>(params_[0]))
            throw Error("wrong arity for element of " + to_string());
        return elem(std::move(v));
    }
    case Family::cyclic:
    case Family::torus:
        return elem(parse_tuple(text));
    case Family::free: {
        std::vector<std::int64_t> letters;
        if (text != "e") {
            for (char c : text) {
                auto lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                std::int64_t idx = lower - 'a';
                if (idx < 0 || idx >= params_[0])
                    throw Error(std::string("bad letter '") + c + "' for " + to_string());
                letters.push_back(2 * idx + (std::isupper(static_cast<unsigned char>(c)) ? 1 : 0));
            }
        }
        return elem(std::move(letters));
    }
    case Family::product: {
        if (text.size() < 2 || text.front() != '[' || text.back() != ']')
            throw Error("product element must be bracketed");
        auto parts = split_top_level(text.substr(1, text.size() - 2), ';');
        if (parts.size() != factors_.size())
            throw Error("wrong number of product components");
        GroupElem g;
        for (std::size_t j = 0; j < parts.size(); ++j)
            g.parts.push_back(factors_[j].parse_elem(parts[j]));
        return g;
    }
    }
    throw Error("unreachable");
}

Window::Window(const GroupSpec& spec, std::vector<GroupElem> elements)
    : spec_(spec), elements_(std::move(elements))
{
    for (auto& g : elements_)
        if (!spec_.contains(g))
            throw Error("window element outside group " + spec_.to_string());
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

std::size_t Window::index_of(const GroupElem& g) const
{
    auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
    if (it == elements_.end() || !(*it == g))
        return size();
    return static_cast<std::size_t>(it - elements_.begin());
}

bool Window::is_symmetric() const
{
    return std::all_of(elements_.begin(), elements_.end(),
                       [&](const GroupElem& g) { return contains(spec_.inv(g)); });
}

std::string Window::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (i)
            s += ',';
        s += spec_.format(elements_[i]);
    }
    return s;
}

Window Window::parse(const GroupSpec& spec, std::string_view text)
{
    std::vector<GroupElem> elems;
    for (auto& part : split_top_level(text))
        if (!part.empty())
            elems.push_back(spec.parse_elem(part));
    return Window(spec, std::move(elems));
}

Window ball(const GroupSpec& spec, int radius)
{
    if (radius < 0)
        throw Error("negative radius");
    auto gens = spec.symmetric_generators();
    std::set<GroupElem> seen{spec.identity()};
    std::vector<GroupElem> frontier{spec.identity()};
    for (int r = 0; r < radius; ++r) {
        std::vector<GroupElem> next;
        for (auto& g : frontier)
            for (auto& s : gens) {
                GroupElem h = spec.mul(s, g);
                if (seen.insert(h).second)
                    next.push_back(std::move(h));
            }
        frontier = std::move(next);
    }
    return Window(spec, {seen.begin(), seen.end()});
}

LocalGraph cayley_graph(const GroupSpec& spec, int radius)
{
    Window b = ball(spec, radius);
    LocalGraph g(b.size());
    g.label_names = spec.generator_names();
    auto gens = spec.generators();
    for (std::size_t v = 0; v < b.size(); ++v)
        for (std::size_t s = 0; s < gens.size(); ++s) {
            std::size_t w = b.index_of(spec.mul(gens[s], b[v]));
            if (w != b.size())
                g.add_edge(v, w, static_cast<int>(s));
        }
    return g;
}

} // namespace wclab
