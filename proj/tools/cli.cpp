#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <graphtex/descriptor.hpp>
#include <graphtex/error.hpp>
#include <graphtex/filters.hpp>
#include <graphtex/fractal.hpp>
#include <graphtex/gac.hpp>
#include <graphtex/image_io.hpp>
#include <graphtex/synth.hpp>

namespace graphtex::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot write " + p.string());
  f << text;
  if (!f) throw IoError("write failed: " + p.string());
}

void ensure_parent(const fs::path& p) {
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
}

// ---------------------------------------------------------------- options

struct SynthOpts {
  std::string kind;
  std::string out;
  std::string truth;
  int width = 0;
  int height = 0;
  std::uint64_t seed = 7;
  int period = 8;
  std::string orientation = "vertical";
};

struct DescriptorOpts {
  std::string in;
  std::string out;
  std::string preview;
  std::string setting = "TwA";
  std::string kind = "IfV";
  double rho = 5.0;
  double beta = 0.1;
  double q = 0.1;
  std::optional<double> M;
  int nbhd = 8;
  unsigned threads = 0;
};

struct SegmentOpts {
  std::vector<std::string> in;
  std::vector<double> weights;
  std::vector<double> circle;
  std::vector<int> rect;
  std::string init_mask;
  double sigma = 2.0;
  double lambda = 0.1;
  double nu = -1.0;
  double tau = 0.1;
  int reinit_every = 100;
  long iters = 20000;
  int steady_window = 100;
  int snapshot_every = 0;
  std::string background;
  std::string out = "segment_out";
};

struct FractalOpts {
  std::string mode;
  std::vector<double> q{0.1, 0.5, 0.7, 0.9};
  double M = 1.0;
  double step = 0.01;
  std::string in;
  double rho = 12.0;
  double beta = 0.1;
  double r_min = 1.0;
  double r_max = 12.0;
  double r_step = 0.5;
  double fit_min = 3.0;
  double fit_max = 10.0;
  int stride = 1;
  std::vector<int> at;
  unsigned threads = 0;
  std::string out = "fractal_out";
};

struct EvalOpts {
  std::string mask;
  std::string truth;
};

// ---------------------------------------------------------------- commands

int cmd_synth(const SynthOpts& o, std::ostream& out) {
  const bool stripes = o.kind == "e-stripes";
  const int w = o.width > 0 ? o.width : (stripes ? 80 : 120);
  const int h = o.height > 0 ? o.height : (stripes ? 80 : 120);
  if (w < 40 || h < 40) throw InvalidArgument("synth: width and height must be at least 40");
  const ShapeMask mask = letter_e_mask(w, h);
  Image img;
  if (stripes) {
    img = synth_stripe_noise(w, h, mask, o.period,
                             o.orientation == "vertical" ? StripeOrientation::vertical : StripeOrientation::horizontal,
                             o.seed);
  } else {
    img = synth_compose(texture_smooth(w, h, o.seed), texture_cellular(w, h, o.seed + 1), mask);
  }
  const fs::path image_path = o.out;
  fs::path truth_path = o.truth;
  if (truth_path.empty()) {
    truth_path = image_path.parent_path() / (image_path.stem().string() + "_truth.pgm");
  }
  ensure_parent(image_path);
  ensure_parent(truth_path);
  save_image(img, image_path);
  save_image(mask.to_image(), truth_path);
  out << "image,truth,width,height\n" << image_path.string() << ',' << truth_path.string() << ',' << w << ',' << h
      << '\n';
  return kOk;
}

int cmd_descriptor(const DescriptorOpts& o, std::ostream& out) {
  DescriptorConfig cfg;
  cfg.setting = *parse_graph_setting(o.setting);
  const IndexTag tag = *parse_index_tag(o.kind);
  cfg.kind = {tag, o.q, o.M.value_or(IndexKind::default_M(o.q))};
  cfg.rho = o.rho;
  cfg.beta = o.beta;
  cfg.nbhd = o.nbhd == 4 ? Neighborhood::four : Neighborhood::eight;
  cfg.validate();

  const Image u = load_image(o.in);
  const DescriptorMap m = compute_descriptor_map(u, cfg, o.threads);
  const fs::path out_path = o.out;
  fs::path preview = o.preview;
  if (preview.empty()) preview = fs::path(out_path).replace_extension(".pgm");
  ensure_parent(out_path);
  ensure_parent(preview);
  save_image(m.values, out_path, ImageFormat::f64raw);
  save_image(rescale(m.values, 0.0, 255.0), preview);

  const auto vals = m.values.data();
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(vals.size());
  out << "min,max,mean\n" << fmt("%.10g", *lo) << ',' << fmt("%.10g", *hi) << ',' << fmt("%.10g", mean) << '\n';
  return kOk;
}

Image segmentation_input(const SegmentOpts& o) {
  if (!o.weights.empty() && o.weights.size() != o.in.size()) {
    throw InvalidArgument("segment: --weights needs one value per input");
  }
  std::vector<DescriptorMap> maps;
  for (std::size_t i = 0; i < o.in.size(); ++i) {
    const Image img = load_image(o.in[i]);
    DescriptorMap m{img, {}};
    m.config.channel_weight = o.weights.empty() ? 1.0 : o.weights[i];
    if (!maps.empty() && (img.width() != maps.front().values.width() || img.height() != maps.front().values.height())) {
      throw InvalidArgument("segment: input dimension mismatch");
    }
    maps.push_back(std::move(m));
  }
  return stack_maps(maps);
}

int cmd_segment(const SegmentOpts& o, std::ostream& out) {
  const Image f = segmentation_input(o);
  const int w = f.width();
  const int h = f.height();

  GacParams p;
  p.nu = o.nu;
  p.tau = o.tau;
  p.reinit_every = o.reinit_every;
  p.max_iters = o.iters;
  p.steady_window = o.steady_window;
  p.validate();

  ContourSpec spec = CircleContour{0.5 * (w - 1), 0.5 * (h - 1), 0.1 * std::min(w, h)};
  if (!o.circle.empty()) {
    spec = CircleContour{o.circle[0], o.circle[1], o.circle[2]};
  } else if (!o.rect.empty()) {
    spec = RectangleContour{o.rect[0], o.rect[1], o.rect[2], o.rect[3]};
  } else if (!o.init_mask.empty()) {
    const Image mi = load_image(o.init_mask);
    if (mi.width() != w || mi.height() != h) throw InvalidArgument("segment: initial mask dimension mismatch");
    spec = ShapeMask::from_image(mi);
  }

  const Image background = o.background.empty() ? f.channel(0) : load_image(o.background);
  if (background.width() != w || background.height() != h) {
    throw InvalidArgument("segment: background dimension mismatch");
  }

  const fs::path dir = o.out;
  fs::create_directories(dir);
  const EdgeMap e = edge_map(f, o.sigma, o.lambda);
  LevelSetField u0 = signed_distance(spec, w, h);

  std::ostringstream log;
  log << "iteration,time,area,changed\n";
  log << 0 << ',' << fmt("%.6f", 0.0) << ',' << interior_mask(u0).inside_count() << ",0\n";
  if (o.snapshot_every > 0) {
    save_image(overlay_contour(background, interior_mask(u0)), dir / "snapshot_000000.png");
  }
  auto observer = [&](const IterationRecord& r, const LevelSetField& field) {
    log << r.iteration << ',' << fmt("%.6f", r.time) << ',' << r.area << ',' << r.changed << '\n';
    if (o.snapshot_every > 0 && r.iteration % o.snapshot_every == 0) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%06ld.png", r.iteration);
      save_image(overlay_contour(background, interior_mask(field)), dir / name);
    }
  };

  GacResult res;
  try {
    res = run_gac(std::move(u0), e, p, observer);
  } catch (const ContourVanished&) {
    write_file(dir / "log.csv", log.str());
    throw;
  }
  write_file(dir / "log.csv", log.str());
  save_image(res.mask.to_image(), dir / "mask.pgm");
  save_image(overlay_contour(background, res.mask), dir / "overlay.png");
  out << "iterations,time,steady,last_change,area\n"
      << res.iterations << ',' << fmt("%.6f", res.field.time) << ',' << (res.steady ? "true" : "false") << ','
      << res.last_change << ',' << res.mask.inside_count() << '\n';
  return kOk;
}

int cmd_fractal(const FractalOpts& o, std::ostream& out) {
  const fs::path dir = o.out;
  fs::create_directories(dir);
  if (o.mode == "curves") {
    const auto grid = delta_grid(o.step);
    out << "q,file,rows\n";
    for (double q : o.q) {
      const DimensionCurve c = dimension_curve(q, o.M, grid);
      std::ostringstream os;
      write_curve_csv(os, c);
      const fs::path file = dir / ("curve_q" + fmt("%g", q) + ".csv");
      write_file(file, os.str());
      out << fmt("%g", q) << ',' << file.string() << ',' << c.samples.size() << '\n';
    }
    return kOk;
  }

  if (o.in.empty()) throw InvalidArgument("fractal growth: --in is required");
  const Image u = load_image(o.in);
  GrowthOptions g;
  g.rho = o.rho;
  g.beta = o.beta;
  g.radii = radius_grid(o.r_min, o.r_max, o.r_step);
  g.fit_min = o.fit_min;
  g.fit_max = o.fit_max;
  g.stride = o.stride;
  if (!(g.beta > 0.0)) throw InvalidArgument("beta must be positive");
  if (!(g.rho > 0.0)) throw InvalidArgument("rho must be positive");
  const Pixel c = o.at.empty() ? Pixel{u.width() / 2, u.height() / 2} : Pixel{o.at[0], o.at[1]};
  if (!u.contains(c)) throw InvalidArgument("fractal growth: --at outside the image");

  const AdaptivePatch patch = adaptive_patch_graph(u, c, g.rho, g.beta, g.nbhd);
  const SphereGrowthSample s = sphere_growth(std::span<const double>(patch.tree.dist), g.radii);
  std::ostringstream os;
  write_growth_csv(os, s);
  write_file(dir / "growth.csv", os.str());
  const double at_centre = fit_local_dimension(s, g.fit_min, g.fit_max);
  const double mean = mean_local_dimension(u, g, o.threads);
  out << "x,y,delta_hat,mean_delta_hat\n"
      << c.x << ',' << c.y << ',' << fmt("%.6f", at_centre) << ',' << fmt("%.6f", mean) << '\n';
  return kOk;
}

int cmd_eval(const EvalOpts& o, std::ostream& out) {
  const ShapeMask a = ShapeMask::from_image(load_image(o.mask));
  const ShapeMask b = ShapeMask::from_image(load_image(o.truth));
  out << "jaccard,pixel_accuracy\n" << fmt("%.6f", jaccard(a, b)) << ',' << fmt("%.6f", pixel_accuracy(a, b)) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- config file

// Expands "--config FILE" of the chosen subcommand into explicit flags placed
// before the command-line flags, so flags given on the command line win.
std::vector<std::string> expand_config(const CLI::App& app, const std::vector<std::string>& args) {
  if (args.size() < 2) return args;
  const CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args[1]);
  } catch (const CLI::OptionNotFound&) {
    return args;
  }
  std::vector<std::string> rest;
  std::string config;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config.empty()) return args;

  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(config);
  } catch (const CLI::FileError&) {
    throw IoError("cannot read config file " + config);
  }
  std::vector<std::string> expanded{args[0], args[1]};
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty()) throw InvalidArgument("config: sections are not supported (" + item.fullname() + ")");
    const std::string flag = "--" + item.name;
    if (item.name == "config" || sub->get_option_no_throw(flag) == nullptr) {
      throw InvalidArgument("config: unknown key '" + item.name + "' for " + args[1]);
    }
    expanded.push_back(flag);
    for (const auto& v : item.inputs) expanded.push_back(v);
  }
  expanded.insert(expanded.end(), rest.begin(), rest.end());
  return expanded;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph-entropy texture descriptors and geodesic active contour segmentation", "graphtex"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  const char* config_help = "key = value file; keys are long flag names without dashes, explicit flags win";
  std::string config_path;

  SynthOpts so;
  auto* synth = app.add_subcommand("synth", "Write a synthetic 'E' test image and its ground-truth mask");
  synth->add_option("kind", so.kind, "e-stripes (stripes on noise) or e-compose (two stand-in textures)")
      ->required()
      ->check(CLI::IsMember({"e-stripes", "e-compose"}));
  synth->add_option("--out", so.out, "Image file (.pgm/.png)")->required();
  synth->add_option("--truth", so.truth, "Mask file; default <out stem>_truth.pgm next to the image");
  synth->add_option("--width", so.width, "Width >= 40; default 80 (e-stripes) or 120 (e-compose)");
  synth->add_option("--height", so.height, "Height >= 40; default 80 (e-stripes) or 120 (e-compose)");
  synth->add_option("--seed", so.seed, "Generator seed")->capture_default_str();
  synth->add_option("--period", so.period, "Stripe period in pixels, >= 2")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  synth->add_option("--orientation", so.orientation, "Stripe orientation")
      ->check(CLI::IsMember({"vertical", "horizontal"}))
      ->capture_default_str();
  synth->add_option("--config", config_path, config_help);

  DescriptorOpts dop;
  auto* desc = app.add_subcommand("descriptor", "Compute a descriptor map");
  desc->add_option("--in", dop.in, "Input image (.pgm/.png/.f64)")->required();
  desc->add_option("--out", dop.out, "Output map in f64raw format")->required();
  desc->add_option("--preview", dop.preview, "PGM preview rescaled to [0,255]; default <out>.pgm");
  desc->add_option("--setting", dop.setting, "Graph setting: GwE, GwA, TwE, TwA, TuE, TuA")
      ->check(CLI::IsMember({"GwE", "GwA", "TwE", "TwA", "TuE", "TuA"}))
      ->capture_default_str();
  desc->add_option("--kind", dop.kind, "Entropy index: IfV, IfP, IDE (IDE needs TuE or TuA)")
      ->check(CLI::IsMember({"IfV", "IfP", "IDE"}))
      ->capture_default_str();
  desc->add_option("--rho", dop.rho, "Patch radius, > 0")->check(CLI::PositiveNumber)->capture_default_str();
  desc->add_option("--beta", dop.beta, "Contrast scale, > 0")->check(CLI::PositiveNumber)->capture_default_str();
  desc->add_option("--q", dop.q, "Weighting parameter in (0,1)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  desc->add_option("--M", dop.M, "Functional scale, > 0; default 1/(1-q)")->check(CLI::PositiveNumber);
  desc->add_option("--nbhd", dop.nbhd, "Neighbourhood: 4 or 8")
      ->check(CLI::IsMember({4, 8}))
      ->capture_default_str();
  desc->add_option("--threads", dop.threads, "Worker threads, 0 = all cores; results do not depend on it")
      ->capture_default_str();
  desc->add_option("--config", config_path, config_help);

  SegmentOpts sg;
  auto* seg = app.add_subcommand("segment", "Geodesic active contour segmentation");
  seg->add_option("--in", sg.in, "One or more inputs (descriptor maps or an image); each is rescaled to [0,1]")
      ->required()
      ->expected(1, -1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  seg->add_option("--weights", sg.weights, "Channel weights, one per input (default 1)")
      ->expected(1, -1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  auto* circle = seg->add_option("--circle", sg.circle, "Initial circle cx,cy,r (default: centre, r = 10% of size)")
                     ->expected(3)
                     ->delimiter(',');
  auto* rect = seg->add_option("--rect", sg.rect, "Initial rectangle x0,y0,x1,y1 (inclusive)")
                   ->expected(4)
                   ->delimiter(',');
  auto* initm = seg->add_option("--init-mask", sg.init_mask, "Initial region as a mask image (>= 128 inside)");
  circle->excludes(rect)->excludes(initm);
  rect->excludes(initm);
  seg->add_option("--sigma", sg.sigma, "Pre-smoothing, >= 0")->check(CLI::NonNegativeNumber)->capture_default_str();
  seg->add_option("--lambda", sg.lambda, "Edge-stopping contrast, > 0")->check(CLI::PositiveNumber)->capture_default_str();
  seg->add_option("--nu", sg.nu, "Force; negative expands")->capture_default_str();
  seg->add_option("--tau", sg.tau, "Time step in (0, 0.25]")->check(CLI::Range(1e-9, 0.25))->capture_default_str();
  seg->add_option("--reinit-every", sg.reinit_every, "Reinitialisation interval, >= 1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seg->add_option("--iters", sg.iters, "Maximum iterations, >= 1")->check(CLI::PositiveNumber)->capture_default_str();
  seg->add_option("--steady-window", sg.steady_window, "Unchanged-mask iterations that count as steady, >= 1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seg->add_option("--snapshot-every", sg.snapshot_every, "Overlay snapshot interval, 0 = off")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  seg->add_option("--background", sg.background, "Image drawn under the snapshots (default: first input)");
  seg->add_option("--out", sg.out, "Output directory (mask.pgm, overlay.png, log.csv)")->capture_default_str();
  seg->add_option("--config", config_path, config_help);

  FractalOpts fo;
  auto* frac = app.add_subcommand("fractal", "Dimension curves and sphere-growth estimates");
  frac->add_option("mode", fo.mode, "curves or growth")->required()->check(CLI::IsMember({"curves", "growth"}));
  frac->add_option("--q", fo.q, "curves: comma-separated q values in (0,1)")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->capture_default_str();
  frac->add_option("--M", fo.M, "curves: functional scale, > 0")->check(CLI::PositiveNumber)->capture_default_str();
  frac->add_option("--step", fo.step, "curves: delta grid step; must divide 2")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  frac->add_option("--in", fo.in, "growth: input image");
  frac->add_option("--rho", fo.rho, "growth: amoeba radius, > 0")->check(CLI::PositiveNumber)->capture_default_str();
  frac->add_option("--beta", fo.beta, "growth: contrast scale, > 0")->check(CLI::PositiveNumber)->capture_default_str();
  frac->add_option("--r-min", fo.r_min, "growth: smallest sphere radius, > 0")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  frac->add_option("--r-max", fo.r_max, "growth: largest sphere radius")->capture_default_str();
  frac->add_option("--r-step", fo.r_step, "growth: radius step, > 0")->check(CLI::PositiveNumber)->capture_default_str();
  frac->add_option("--fit-min", fo.fit_min, "growth: lower end of the fit range")->capture_default_str();
  frac->add_option("--fit-max", fo.fit_max, "growth: upper end of the fit range")->capture_default_str();
  frac->add_option("--stride", fo.stride, "growth: centre spacing for the mean, >= 1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  frac->add_option("--at", fo.at, "growth: pixel x,y written to growth.csv (default: image centre)")
      ->expected(2)
      ->delimiter(',');
  frac->add_option("--threads", fo.threads, "Worker threads, 0 = all cores")->capture_default_str();
  frac->add_option("--out", fo.out, "Output directory")->capture_default_str();
  frac->add_option("--config", config_path, config_help);

  EvalOpts eo;
  auto* ev = app.add_subcommand("eval", "Score a mask against ground truth");
  ev->add_option("--mask", eo.mask, "Segmentation mask (>= 128 inside)")->required();
  ev->add_option("--truth", eo.truth, "Ground-truth mask (>= 128 inside)")->required();
  ev->add_option("--config", config_path, config_help);

  try {
    const std::vector<std::string> args = expand_config(app, args_in);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kUsage;
    }
    if (*synth) return cmd_synth(so, out);
    if (*desc) return cmd_descriptor(dop, out);
    if (*seg) return cmd_segment(sg, out);
    if (*frac) return cmd_fractal(fo, out);
    if (*ev) return cmd_eval(eo, out);
    return kUsage;
  } catch (const ContourVanished& e) {
    err << "error: " << e.what() << '\n';
    return kContourVanished;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace graphtex::cli
