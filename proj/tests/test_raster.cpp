#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mechsketch/errors.hpp"
#include "mechsketch/raster.hpp"
#include "test_support.hpp"

using namespace mechsketch;

namespace {

Sketch single_point_stroke(Vec2 p, double width = 1.5) {
    Sketch sk;
    Stroke s;
    s.points = {p, p, p, p};
    s.width = width;
    sk.strokes.push_back(s);
    return sk;
}

double weighted_sum(const ImageD& a, const ImageD& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

ImageD random_adjoint(testsupport::Rng& rng, int canvas = 224) {
    ImageD a(canvas, canvas);
    for (auto& v : a.data) v = rng.uniform(-1.0, 1.0);
    return a;
}

}  // namespace

TEST_CASE("raster values stay in [0,1] and calls are deterministic") {
    testsupport::Rng rng(42);
    auto sketch = testsupport::random_sketch(rng, 6);
    RasterParams params;
    auto img1 = rasterize(sketch, params);
    auto img2 = rasterize(sketch, params);
    CHECK(img1.data == img2.data);
    for (double v : img1.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("a corner stroke leaves the far corner blank") {
    auto sketch = single_point_stroke({0.01, 0.01});
    auto img = rasterize(sketch, {});
    CHECK(img.at(223, 223) < 1e-6);
}

TEST_CASE("a pixel on a curve sample reaches at least 0.9 ink") {
    // all control points on the center of pixel (112,112)
    auto sketch = single_point_stroke({112.5 / 224.0, 112.5 / 224.0});
    auto img = rasterize(sketch, {});
    CHECK(img.at(112, 112) >= 0.9);
}

TEST_CASE("two identical strokes compose as 1-(1-c)^2") {
    testsupport::Rng rng(9);
    auto one = testsupport::random_sketch(rng, 1);
    Sketch two = one;
    two.strokes.push_back(one.strokes[0]);
    auto img1 = rasterize(one, {});
    auto img2 = rasterize(two, {});
    for (size_t i = 0; i < img1.size(); ++i) {
        double c = img1.data[i];
        CHECK(img2.data[i] == doctest::Approx(1.0 - (1.0 - c) * (1.0 - c)).epsilon(1e-9));
        CHECK(img2.data[i] >= c - 1e-12);
    }
}

TEST_CASE("integer pixel shifts translate the raster exactly") {
    testsupport::Rng rng(21);
    auto sketch = testsupport::random_sketch(rng, 4);
    auto base = rasterize(sketch, {});
    for (int k : {1, 2}) {
        Sketch shifted = sketch;
        for (auto& s : shifted.strokes)
            for (auto& p : s.points) p.x += k / 224.0;
        auto img = rasterize(shifted, {});
        for (int y = 0; y < 224; ++y)
            for (int x = k; x < 224; ++x)
                CHECK(img.at(x, y) == doctest::Approx(base.at(x - k, y)).epsilon(1e-6));
    }
}

TEST_CASE("ink is pointwise non-decreasing in stroke width") {
    testsupport::Rng rng(33);
    auto thin = testsupport::random_sketch(rng, 3);
    Sketch thick = thin;
    for (auto& s : thick.strokes) s.width = 3.0;
    auto a = rasterize(thin, {});
    auto b = rasterize(thick, {});
    for (size_t i = 0; i < a.size(); ++i) CHECK(b.data[i] >= a.data[i] - 1e-12);
}

TEST_CASE("zero adjoint produces a zero gradient set") {
    testsupport::Rng rng(5);
    auto sketch = testsupport::random_sketch(rng, 3);
    ImageD zero(224, 224, 0.0);
    auto grads = rasterize_backward(sketch, {}, zero);
    REQUIRE(grads.per_stroke.size() == 3);
    for (const auto& g : grads.per_stroke)
        for (double v : g) CHECK(v == 0.0);
}

TEST_CASE("analytic gradients match central finite differences") {
    testsupport::Rng rng(1234);
    RasterParams params;
    auto sketch = testsupport::random_sketch(rng, 3);
    auto adjoint = random_adjoint(rng);
    auto grads = rasterize_backward(sketch, params, adjoint);
    REQUIRE(grads.all_finite());

    const double h = 1e-4;
    int checked = 0, good = 0;
    for (size_t si = 0; si < sketch.strokes.size(); ++si)
        for (int pi = 0; pi < 4; ++pi)
            for (int axis = 0; axis < 2; ++axis) {
                Sketch plus = sketch, minus = sketch;
                double& cp = axis == 0 ? plus.strokes[si].points[pi].x : plus.strokes[si].points[pi].y;
                double& cm = axis == 0 ? minus.strokes[si].points[pi].x : minus.strokes[si].points[pi].y;
                cp += h;
                cm -= h;
                double fd = (weighted_sum(rasterize(plus, params), adjoint) -
                             weighted_sum(rasterize(minus, params), adjoint)) /
                            (2 * h);
                double an = grads.per_stroke[si][2 * pi + axis];
                double err = std::abs(fd - an);
                double rel = err / std::max({std::abs(fd), std::abs(an), 1e-8});
                ++checked;
                if (rel < 1e-3 || err < 1e-8) ++good;
            }
    CHECK(checked == 48);
    CHECK(good == checked);
}

TEST_CASE("uniform adjoint makes rigid x-translation gradient vanish") {
    testsupport::Rng rng(77);
    auto sketch = testsupport::random_sketch(rng, 4);
    ImageD uniform(224, 224, 1.0);
    auto grads = rasterize_backward(sketch, {}, uniform);
    double shift_grad = 0.0, scale = 0.0;
    for (const auto& g : grads.per_stroke)
        for (int p = 0; p < 4; ++p) {
            shift_grad += g[2 * p];
            scale += std::abs(g[2 * p]);
        }
    CHECK(std::abs(shift_grad) < 1e-6 * std::max(scale, 1.0));
}

TEST_CASE("backward validates adjoint and composite mode") {
    testsupport::Rng rng(2);
    auto sketch = testsupport::random_sketch(rng, 1);
    ImageD bad(224, 224, 0.0);
    bad.data[0] = std::nan("");
    CHECK_THROWS_AS(rasterize_backward(sketch, {}, bad), NumericError);
    ImageD wrong(64, 64, 0.0);
    CHECK_THROWS_AS(rasterize_backward(sketch, {}, wrong), InputError);
    RasterParams hard;
    hard.composite = CompositeMode::Max;
    ImageD ok(224, 224, 0.0);
    CHECK_THROWS_AS(rasterize_backward(sketch, hard, ok), InputError);
}

TEST_CASE("max composite preview stays within [0,1] and covers the soft raster") {
    testsupport::Rng rng(8);
    auto sketch = testsupport::random_sketch(rng, 2);
    RasterParams hard;
    hard.composite = CompositeMode::Max;
    auto img = rasterize(sketch, hard);
    for (double v : img.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}
