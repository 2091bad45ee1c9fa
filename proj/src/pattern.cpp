// SPDX-License-Identifier: Apache-2.0
//
// tris - transmissive RIS link and array simulation library
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "tris/pattern.hpp"
#include "tris/common.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace tris
{
    namespace
    {
        std::size_t whole_intervals(double span, double step, const char *what)
        {
            if (!(step > 0.0) || !std::isfinite(step))
                fail(ErrorCode::invalid_argument, std::string(what) + " step must be positive");
            const double n = std::round(span / step);
            if (n < 1.0 || std::abs(n * step - span) > 1e-9 * span)
                fail(ErrorCode::invalid_argument, std::string(what) + " step must divide its range into whole intervals");
            return std::size_t(n);
        }
    }

    AngularGrid AngularGrid::hemisphere(double theta_step, double phi_step)
    {
        AngularGrid g;
        g.kind_ = GridKind::hemisphere;
        const auto nt = whole_intervals(0.5 * pi, theta_step, "theta");
        const auto np = whole_intervals(two_pi, phi_step, "phi");
        g.theta_step_ = 0.5 * pi / double(nt);
        g.phi_step_ = two_pi / double(np);
        g.num_theta_ = nt + 1;
        g.num_phi_ = np;
        g.dirs_.reserve(g.num_theta_ * g.num_phi_);
        for (std::size_t i = 0; i <= nt; ++i)
            for (std::size_t j = 0; j < np; ++j)
                g.dirs_.push_back({double(i) * g.theta_step_, double(j) * g.phi_step_});
        return g;
    }

    AngularGrid AngularGrid::cut(double plane_phi, double step)
    {
        AngularGrid g;
        g.kind_ = GridKind::cut;
        const auto n = whole_intervals(0.5 * pi, step, "cut");
        g.theta_step_ = 0.5 * pi / double(n);
        g.plane_phi_ = wrap_two_pi(plane_phi);
        g.num_theta_ = 2 * n + 1;
        g.num_phi_ = 1;
        for (std::size_t i = 0; i < g.num_theta_; ++i)
        {
            const double s = (double(i) - double(n)) * g.theta_step_;
            g.dirs_.push_back({std::abs(s), s < 0.0 ? wrap_two_pi(g.plane_phi_ + pi) : g.plane_phi_});
        }
        return g;
    }

    double AngularGrid::signed_angle(std::size_t i) const
    {
        if (kind_ != GridKind::cut)
            fail(ErrorCode::invalid_argument, "signed angles exist on cut grids only");
        return (double(i) - double(num_theta_ / 2)) * theta_step_;
    }

    bool AngularGrid::same_as(const AngularGrid &o) const
    {
        return kind_ == o.kind_ && num_theta_ == o.num_theta_ && num_phi_ == o.num_phi_ && theta_step_ == o.theta_step_ &&
               phi_step_ == o.phi_step_ && plane_phi_ == o.plane_phi_;
    }

    std::size_t RadiationPattern::peak_index() const
    {
        if (field.empty())
            fail(ErrorCode::invalid_argument, "empty pattern");
        std::size_t best = 0;
        for (std::size_t i = 1; i < field.size(); ++i)
            if (std::norm(field[i]) > std::norm(field[best]))
                best = i;
        return best;
    }

    RadiationPattern RadiationPattern::normalized() const
    {
        RadiationPattern out = *this;
        const double peak = peak_power();
        if (!(peak > 0.0))
            fail(ErrorCode::invalid_argument, "cannot normalize an all-zero pattern");
        const double s = 1.0 / std::sqrt(peak);
        for (auto &e : out.field)
            e *= s;
        out.field[peak_index()] = std::polar(1.0, std::arg(field[peak_index()]));
        out.normalization = Normalization::peak;
        return out;
    }

    RadiationPattern array_pattern(std::span<const cplx> excitation, const ArrayGeometry &geom, double element_exponent,
                                   double carrier_hz, const AngularGrid &grid)
    {
        if (excitation.size() != geom.size())
            fail(ErrorCode::invalid_argument, "excitation size does not match the panel");
        if (grid.size() == 0)
            fail(ErrorCode::invalid_argument, "empty angular grid");
        if (!(element_exponent >= 0.0))
            fail(ErrorCode::invalid_argument, "element exponent must be non-negative");
        const double k = two_pi / wavelength(carrier_hz);
        const std::size_t nx = geom.num_x(), ny = geom.num_y();
        std::vector<double> xs(nx), ys(ny);
        for (std::size_t m = 0; m < nx; ++m)
            xs[m] = geom.offset_x(m) * geom.spacing_x();
        for (std::size_t n = 0; n < ny; ++n)
            ys[n] = geom.offset_y(n) * geom.spacing_y();

        RadiationPattern out{grid, {}, carrier_hz, Normalization::raw};
        out.field.reserve(grid.size());
        std::vector<cplx> ex(nx), ey(ny);
        const CosinePattern element{element_exponent};
        for (const auto &d : grid.directions())
        {
            const double u = std::sin(d.theta) * std::cos(d.phi);
            const double v = std::sin(d.theta) * std::sin(d.phi);
            for (std::size_t m = 0; m < nx; ++m)
                ex[m] = std::polar(1.0, k * xs[m] * u);
            for (std::size_t n = 0; n < ny; ++n)
                ey[n] = std::polar(1.0, k * ys[n] * v);
            cplx sum = 0.0;
            for (std::size_t m = 0; m < nx; ++m)
            {
                cplx row = 0.0;
                const cplx *w = excitation.data() + m * ny;
                for (std::size_t n = 0; n < ny; ++n)
                    row += w[n] * ey[n];
                sum += ex[m] * row;
            }
            out.field.push_back(element(d.theta) * sum);
        }
        return out;
    }

    RadiationPattern radiation_pattern(const PatternSource &source, const AngularGrid &grid)
    {
        if (source.config == nullptr)
            fail(ErrorCode::invalid_argument, "pattern source has no codebook");
        const auto &geom = source.config->geometry();
        const auto response = source.config->response(source.mode, source.table);
        std::vector<cplx> excitation;
        excitation.reserve(geom.size());
        for (std::size_t m = 0; m < geom.num_x(); ++m)
            for (std::size_t n = 0; n < geom.num_y(); ++n)
                excitation.push_back(feed_illumination(source.feed, m, n, geom, source.carrier_hz, source.feed_exponent) *
                                     response[geom.index(m, n)]);
        return array_pattern(excitation, geom, source.element_exponent, source.carrier_hz, grid);
    }

    namespace
    {
        // Trapezoid in theta (with sin weight), rectangle in the periodic phi
        double hemisphere_integral(const RadiationPattern &p, std::size_t stride)
        {
            const auto &g = p.grid;
            const std::size_t nt = g.num_theta(), np = g.num_phi();
            const double dt = g.theta_step() * double(stride), dp = g.phi_step() * double(stride);
            double total = 0.0;
            for (std::size_t i = 0; i < nt; i += stride)
            {
                const double theta = double(i) * g.theta_step();
                double ring = 0.0;
                for (std::size_t j = 0; j < np; j += stride)
                    ring += p.power(i * np + j);
                double w = (i == 0 || i + 1 == nt) ? 0.5 : 1.0;
                total += w * ring * std::sin(theta);
            }
            return total * dt * dp;
        }
    }

    GainEstimate directivity_and_gain(const RadiationPattern &pattern, double loss_budget_db)
    {
        const auto &g = pattern.grid;
        if (g.kind() != GridKind::hemisphere)
            fail(ErrorCode::invalid_argument, "directivity needs a hemisphere grid");
        if ((g.num_theta() - 1) % 2 != 0 || g.num_phi() % 2 != 0)
            fail(ErrorCode::invalid_argument, "directivity needs an even number of theta and phi intervals");
        if (!std::isfinite(loss_budget_db))
            fail(ErrorCode::invalid_argument, "loss budget must be finite");
        const double peak = pattern.peak_power();
        const double fine = hemisphere_integral(pattern, 1);
        const double coarse = hemisphere_integral(pattern, 2);
        if (!(fine > 0.0))
            fail(ErrorCode::invalid_argument, "pattern radiates no power");
        const double d_fine = linear_to_db(4.0 * pi * peak / fine);
        const double d_coarse = linear_to_db(4.0 * pi * peak / coarse);
        if (!(std::abs(d_fine - d_coarse) < 0.1))
        {
            std::ostringstream msg;
            msg << std::setprecision(4) << "pattern grid under-resolved: directivity " << d_fine << " dBi at "
                << rad_to_deg(g.theta_step()) << " deg vs " << d_coarse << " dBi at twice the step";
            fail(ErrorCode::resolution, msg.str());
        }
        return {d_fine, d_fine - loss_budget_db};
    }

    CutMetrics pattern_metrics(const RadiationPattern &cut)
    {
        const auto &g = cut.grid;
        if (g.kind() != GridKind::cut)
            fail(ErrorCode::invalid_argument, "pattern metrics need a principal-cut pattern");
        const std::size_t n = cut.field.size();
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i)
            p[i] = cut.power(i);
        const std::size_t k = cut.peak_index();
        if (k == 0 || k + 1 == n)
            fail(ErrorCode::metric_undefined, "pattern peak lies on the grid boundary");
        const double peak = p[k];

        std::size_t left = k, right = k;
        while (left > 0 && p[left - 1] <= p[left])
            --left;
        while (right + 1 < n && p[right + 1] <= p[right])
            ++right;
        if (left == 0 || right + 1 == n)
            fail(ErrorCode::metric_undefined, "main lobe has no null on one side within the cut");

        double side = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (i < left || i > right)
                side = std::max(side, p[i]);

        const double half = 0.5 * peak;
        auto crossing = [&](std::size_t from, std::size_t to, int dir) -> double {
            for (std::size_t i = from; i != to; i = std::size_t(int(i) + dir))
            {
                std::size_t j = std::size_t(int(i) + dir);
                if (p[j] < half)
                {
                    // Linear in dB between samples i and j
                    const double a = linear_to_db(p[i] / half), b = linear_to_db(std::max(p[j], 1e-300) / half);
                    const double t = a / (a - b);
                    return g.signed_angle(i) + t * (g.signed_angle(j) - g.signed_angle(i));
                }
            }
            fail(ErrorCode::metric_undefined, "main lobe does not fall to -3 dB before its null");
        };
        const double lo = crossing(k, left, -1);
        const double hi = crossing(k, right, +1);

        CutMetrics out;
        out.peak_angle = g.signed_angle(k);
        out.peak_direction = g.directions()[k];
        out.peak_power = peak;
        out.sidelobe_level_db = side > 0.0 ? linear_to_db(side / peak) : -std::numeric_limits<double>::infinity();
        out.hpbw = hi - lo;
        out.null_left = g.signed_angle(left);
        out.null_right = g.signed_angle(right);
        return out;
    }

    double scan_loss(const RadiationPattern &broadside, const RadiationPattern &steered)
    {
        if (!broadside.grid.same_as(steered.grid))
            fail(ErrorCode::invalid_argument, "scan loss needs patterns on the same grid");
        if (broadside.normalization != Normalization::raw || steered.normalization != Normalization::raw)
            fail(ErrorCode::invalid_argument, "scan loss needs raw (unnormalized) patterns");
        return linear_to_db(broadside.peak_power() / steered.peak_power());
    }

    double aperture_efficiency(double gain_dbi, double aperture_area, double carrier_hz)
    {
        if (!(aperture_area > 0.0))
            fail(ErrorCode::invalid_argument, "aperture area must be positive");
        const double lambda = wavelength(carrier_hz);
        return db_to_linear(gain_dbi) * lambda * lambda / (4.0 * pi * aperture_area);
    }

    void write_pattern_csv(const RadiationPattern &pattern, std::ostream &out)
    {
        const bool cut = pattern.grid.kind() == GridKind::cut;
        const double peak = pattern.peak_power();
        out << (cut ? "angle_deg," : "") << "theta_deg,phi_deg,power_db_normalized\n";
        std::ostringstream line;
        line << std::fixed;
        for (std::size_t i = 0; i < pattern.field.size(); ++i)
        {
            const auto &d = pattern.grid.directions()[i];
            const double p = pattern.power(i);
            const double db = p > 0.0 ? linear_to_db(p / peak) : -300.0;
            line.str("");
            if (cut)
                line << std::setprecision(4) << rad_to_deg(pattern.grid.signed_angle(i)) << ',';
            line << std::setprecision(4) << rad_to_deg(d.theta) << ',' << rad_to_deg(d.phi) << ','
                 << std::setprecision(6) << std::max(db, -300.0) << '\n';
            out << line.str();
        }
    }
}
