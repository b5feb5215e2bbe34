#include "multiplane/configuration.hpp"

namespace multiplane {

long SingularPoint::multiplicity() const
{
    long m = 0;
    for (long v : cluster->position(0).multiplicities)
        m += v;
    return m;
}

std::vector<std::size_t> SingularPoint::curves() const
{
    std::vector<std::size_t> out;
    const auto& mult = cluster->position(0).multiplicities;
    for (std::size_t i = 0; i < mult.size(); ++i)
        if (mult[i] > 0)
            out.push_back(i);
    return out;
}

std::vector<long> Configuration::degrees() const
{
    std::vector<long> d;
    for (const auto& c : curves)
        d.push_back(c.degree);
    return d;
}

int Configuration::curve_index(const std::string& name) const
{
    for (std::size_t i = 0; i < curves.size(); ++i)
        if (curves[i].name == name)
            return static_cast<int>(i);
    return -1;
}

int Configuration::point_index(const std::string& id) const
{
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].id == id)
            return static_cast<int>(i);
    return -1;
}

}  // namespace multiplane
