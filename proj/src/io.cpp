#include "roc2/io.hpp"

#include <cctype>
#include <stdexcept>

namespace roc2 {

json degree_to_json(const Degree& d) { return json::array({d.a, d.b}); }

Degree degree_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("degree must be a two-element array [a, b]");
    return Degree{j[0].get<long long>(), j[1].get<long long>()};
}

json algebra_to_json(const MonomialAlgebra& a)
{
    json gens = json::array();
    for (const auto& g : a.gens())
        gens.push_back({{"name", g.name},
                        {"degree", degree_to_json(g.degree)},
                        {"filtration", g.filtration},
                        {"annihilator", g.annihilator},
                        {"invertible", g.invertible}});
    return {{"generators", gens}};
}

MonomialAlgebra algebra_from_json(const json& j)
{
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators")) {
        Generator gen;
        gen.name = g.at("name").get<std::string>();
        gen.degree = degree_from_json(g.at("degree"));
        gen.filtration = g.value("filtration", 0);
        gen.annihilator = g.value("annihilator", 0);
        gen.invertible = g.value("invertible", false);
        gens.push_back(std::move(gen));
    }
    return MonomialAlgebra(gens);
}

namespace {

struct ElementParser {
    const MonomialAlgebra& a;
    const std::string& s;
    size_t pos = 0;

    void skip_ws()
    {
        while (pos < s.size() && std::isspace((unsigned char)s[pos]))
            ++pos;
    }
    bool eat(char c)
    {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    long long integer()
    {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+'))
            ++pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
            ++pos;
        if (pos == start)
            throw std::invalid_argument("expected integer at position " + std::to_string(start));
        return std::stoll(s.substr(start, pos - start));
    }
    std::string name()
    {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
            ++pos;
        if (pos == start)
            throw std::invalid_argument("expected name at position " + std::to_string(start));
        return s.substr(start, pos - start);
    }
    /* term := [int] { '*' factor } | factor { '*' factor } */
    Element term()
    {
        long long coeff = 1;
        std::map<std::string, int> exps;
        skip_ws();
        bool first = true;
        while (true) {
            skip_ws();
            if (pos >= s.size())
                break;
            char c = s[pos];
            if (c == '+' || c == '-')
                break;
            if (!first && !eat('*'))
                break;
            skip_ws();
            if (std::isdigit((unsigned char)s[pos])) {
                coeff *= integer();
            }
            else {
                std::string n = name();
                long long e = 1;
                if (eat('^'))
                    e = integer();
                if (n != "1")
                    exps[n] += (int)e;
            }
            first = false;
        }
        return a.element(a.monomial(exps), coeff);
    }
    Element parse()
    {
        Element total;
        skip_ws();
        if (pos >= s.size())
            return total;
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        while (true) {
            Element t = term();
            total = a.add(total, neg ? a.scale(-1, t) : t);
            skip_ws();
            if (pos >= s.size())
                break;
            if (eat('-'))
                neg = true;
            else if (eat('+'))
                neg = false;
            else
                throw std::invalid_argument("unexpected character at position " +
                                            std::to_string(pos));
        }
        return total;
    }
};

}  // namespace

Element parse_element(const MonomialAlgebra& a, const std::string& text)
{
    if (text == "0")
        return Element{};
    ElementParser p{a, text};
    return p.parse();
}

SseqSpec sseq_spec_from_json(const json& j)
{
    SseqSpec spec;
    spec.algebra = algebra_from_json(j.at("algebra"));
    for (const auto& d : j.value("differentials", json::array())) {
        Differential diff;
        diff.r = d.at("r").get<int>();
        for (const auto& [gen, value] : d.at("values").items()) {
            DiffValue dv;
            // "name" or "name^power" keys declare the derivation domain
            auto caret = gen.find('^');
            dv.gen = gen.substr(0, caret);
            dv.power = caret == std::string::npos ? 1 : std::stoi(gen.substr(caret + 1));
            dv.value = parse_element(spec.algebra, value.get<std::string>());
            diff.values.push_back(std::move(dv));
        }
        spec.differentials.push_back(std::move(diff));
    }
    if (j.contains("window")) {
        const auto& w = j.at("window");
        if (w.contains("a")) {
            spec.window.a_min = w.at("a")[0].get<long long>();
            spec.window.a_max = w.at("a")[1].get<long long>();
        }
        if (w.contains("b")) {
            spec.window.b_min = w.at("b")[0].get<long long>();
            spec.window.b_max = w.at("b")[1].get<long long>();
        }
        spec.window.s_max = w.value("s_max", 32);
        spec.window.exp_cap = w.value("exp_cap", 64);
    }
    return spec;
}

json page_to_json(const Page& page, const Window& claim)
{
    json pieces = json::array();
    for (const auto& [key, piece] : page.pieces) {
        if (!claim.contains(key.degree(), 0) || key.s > claim.s_max || !piece.has_classes())
            continue;
        json classes = json::array();
        for (size_t i = 0; i < piece.class_reps.size(); ++i)
            classes.push_back({{"label", page.class_label(key, i)},
                               {"order", piece.class_orders[i]}});
        pieces.push_back({{"degree", degree_to_json(key.degree())},
                          {"s", key.s},
                          {"classes", classes}});
    }
    return {{"page", page.r},
            {"stable_page", page.stable_page},
            {"pieces", pieces}};
}

json report_to_json(const Report& rep)
{
    json items = json::array();
    for (const auto& c : rep.items)
        items.push_back({{"name", c.name},
                         {"status", c.pass ? "pass" : "fail"},
                         {"details", c.details}});
    return {{"all_pass", rep.all_pass()}, {"checks", items}};
}

json fgab_to_json(const FGAbelianGroup& g)
{
    return {{"rank", g.free_rank},
            {"factors", g.invariant_factors},
            {"generators", g.generator_labels}};
}

json mackey_to_json(const MackeyFunctor& m)
{
    return {{"name", m.name},
            {"fixed", fgab_to_json(m.fixed)},
            {"underlying", fgab_to_json(m.underlying)},
            {"res", m.res},
            {"tr", m.tr},
            {"weyl", m.weyl}};
}

json picard_result_to_json(const PicardResult& r)
{
    json rows = json::array();
    for (const auto& row : r.column.rows)
        rows.push_back({{"s", row.s}, {"class", row.klass}, {"order", row.order},
                        {"fate", row.fate}});
    return {{"target", r.target},
            {"rank", r.group.free_rank},
            {"factors", r.group.invariant_factors},
            {"generators", r.generators},
            {"algebraic", fgab_to_json(r.algebraic)},
            {"order_bound", r.order_bound},
            {"column", rows},
            {"assumptions", r.assumptions}};
}

}  // namespace roc2
