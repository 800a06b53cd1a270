"""Command line entry point: ``bundlegsp <command> --config cfg.json``.

Every command reads a JSON config, returns the text of one output file and
writes it atomically (or to stdout).  Each output starts with the command,
the sha256 of the canonical config, the seed and the config itself, so two
runs with the same config produce byte-identical files.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bundle as bmod
from .bundle import NonTrivializable, NotACover
from .denoise import default_sigma_grid, denoise_experiment
from .graphs import Graph, cartesian_product, chorded_cycle_graph, cycle_graph, path_graph
from .io import (
    bundle_from_dict,
    bundle_to_dict,
    cover_from_dict,
    csv_text,
    dictionary_csv,
    dumps_json,
    graph_from_dict,
    graph_to_dict,
    write_atomic,
)
from .landscape import fixture_path, read_landscape_csv
from .spectral import fourier_basis, spectral_moment, spectrum, standard_basis
from .transform import atom_norm_stats, build_dictionary, cumulative_coherence


def canonical(config: dict) -> str:
    return json.dumps(config, sort_keys=True, separators=(",", ":"))


def config_hash(config: dict) -> str:
    return hashlib.sha256(canonical(config).encode()).hexdigest()


def header_lines(command: str, config: dict, seed: int) -> list[str]:
    return [
        f"bundlegsp {command} config_sha256={config_hash(config)} seed={seed}",
        f"config={canonical(config)}",
    ]


def meta(command: str, config: dict, seed: int) -> dict:
    return {"command": command, "config": config, "config_sha256": config_hash(config), "seed": seed}


# -- config resolution -----------------------------------------------------


def _relative(path, base_dir) -> Path:
    p = Path(path)
    return p if p.is_absolute() or base_dir is None else Path(base_dir) / p


def resolve_bundle(desc, base_dir=None) -> bmod.GraphBundle:
    if isinstance(desc, str):
        desc = {"preset": desc}
    if "preset" in desc:
        try:
            return bmod.PRESETS[desc["preset"]]()
        except KeyError:
            raise ValueError(f"unknown bundle preset {desc['preset']!r}; choose from {sorted(bmod.PRESETS)}")
    if "file" in desc:
        return bundle_from_dict(json.loads(_relative(desc["file"], base_dir).read_text()))
    return bundle_from_dict(desc)


def resolve_graph(desc, base_dir=None) -> Graph:
    """Graph from ``{"preset": name}`` (total graph), ``{"cycle": n}``,
    ``{"path": n}``, ``{"chorded_cycle": n}``, ``{"product": [g, h]}``,
    ``{"bundle": ...}`` or a raw ``{"n": ..., "edges": ...}``."""
    if isinstance(desc, str):
        desc = {"preset": desc}
    if "preset" in desc or "file" in desc:
        return resolve_bundle(desc, base_dir).total
    if "bundle" in desc:
        return resolve_bundle(desc["bundle"], base_dir).total
    if "cycle" in desc:
        return cycle_graph(int(desc["cycle"]))
    if "path" in desc:
        return path_graph(int(desc["path"]))
    if "chorded_cycle" in desc:
        return chorded_cycle_graph(int(desc["chorded_cycle"]))
    if "product" in desc:
        g, h = (resolve_graph(s, base_dir) for s in desc["product"])
        return cartesian_product(g, h)[0]
    return graph_from_dict(desc)


def resolve_cover(bundle: bmod.GraphBundle, desc, base_dir=None):
    desc = desc or {"type": "star"}
    kind = desc.get("type", "star")
    base = bundle.base
    if kind == "star":
        cover = bmod.star_cover(base)
    elif kind == "trivial":
        cover = bmod.trivial_cover(base)
    elif kind == "singleton":
        cover = bmod.singleton_cover(base)
    elif kind == "stride_reach":
        order = desc.get("cycle_order", list(range(base.n)))
        cover = bmod.stride_reach_cover(base, order, int(desc["stride"]), int(desc["reach"]))
    elif kind == "explicit":
        return cover_from_dict(base, desc)
    else:
        raise ValueError(f"unknown cover type {kind!r}")
    return cover, None


def resolve_partition(cover, desc):
    desc = desc or "inverse_multiplicity"
    if desc == "inverse_multiplicity":
        return bmod.inverse_multiplicity_partition(cover)
    if desc == "indicator":
        return bmod.indicator_partition(cover)
    raise ValueError(f"unknown partition {desc!r}")


def resolve_basis(graph: Graph, name: str):
    if name == "fourier":
        return fourier_basis(graph)
    if name == "standard":
        return standard_basis(graph)
    raise ValueError(f"unknown basis {name!r}")


def make_dictionary(bundle, config: dict, base_dir=None, cover_desc=None):
    cover, partition = resolve_cover(bundle, cover_desc or config.get("cover"), base_dir)
    if partition is None:
        partition = resolve_partition(cover, config.get("partition"))
    basis = config.get("basis", "fourier")
    return build_dictionary(
        bundle, cover, partition, resolve_basis(bundle.base, basis), resolve_basis(bundle.fiber, basis)
    )


# -- commands --------------------------------------------------------------


def cmd_make_bundle(config: dict, seed: int = 0, base_dir=None) -> str:
    bundle = resolve_bundle(config.get("bundle", "mobius"), base_dir)
    report = bmod.validate(bundle)
    out = {"meta": meta("make-bundle", config, seed)}
    out.update(bundle_to_dict(bundle))
    out["total"] = graph_to_dict(bundle.total)
    out["summary"] = {
        "vertices": bundle.total.n,
        "edges": len(bundle.total.edges),
        "valid": report.ok,
        "failures": report.failures,
    }
    return dumps_json(out)


def sweep_rows(bundle, strides, reaches, m=None, basis="fourier", cycle_order=None):
    """Coherence and atom-norm spread for each (stride, reach) cover."""
    order = list(range(bundle.base.n)) if cycle_order is None else list(cycle_order)
    if m is None:
        m = math.isqrt(bundle.n)
    fb, ff = resolve_basis(bundle.base, basis), resolve_basis(bundle.fiber, basis)
    rows = []
    for reach in reaches:
        for stride in strides:
            try:
                cover = bmod.stride_reach_cover(bundle.base, order, stride, reach)
                d = build_dictionary(bundle, cover, bmod.inverse_multiplicity_partition(cover), fb, ff)
            except NotACover:
                rows.append((stride, reach, "not_a_cover", "", ""))
                continue
            except NonTrivializable:
                rows.append((stride, reach, "not_trivializable", "", ""))
                continue
            rows.append((stride, reach, "ok", cumulative_coherence(d, m), atom_norm_stats(d)[1]))
    return rows


def cmd_sweep(config: dict, seed: int = 0, base_dir=None) -> str:
    bundle = resolve_bundle(config.get("bundle", "glued"), base_dir)
    sw = config.get("sweep", {})
    rows = sweep_rows(
        bundle,
        sw.get("strides", list(range(1, 7))),
        sw.get("reaches", list(range(1, 7))),
        sw.get("m"),
        config.get("basis", "fourier"),
        sw.get("cycle_order"),
    )
    header = ["stride", "reach", "status", "coherence_at_sqrt_n", "atom_norm_std"]
    return csv_text(header, rows, header_lines("sweep", config, seed))


def cmd_spectra(config: dict, seed: int = 0, base_dir=None) -> str:
    sp = config.get("spectra", {})
    descs = sp.get("graphs", [{"preset": "mobius"}, {"preset": "cylinder"}])
    labels = sp.get("labels", [json.dumps(s, sort_keys=True) for s in descs])
    kmax = int(sp.get("max_moment", 8))
    tol = float(sp.get("tol", 1e-9))
    graphs = []
    spectra = []
    for label, s in zip(labels, descs):
        g = resolve_graph(s, base_dir)
        lam = spectrum(g)
        spectra.append(lam)
        graphs.append({
            "label": label,
            "n": g.n,
            "edges": len(g.edges),
            "spectrum": [float(x) for x in lam],
            "moments": [spectral_moment(lam, k) for k in range(kmax + 1)],
        })
    out = {"meta": meta("spectra", config, seed), "graphs": graphs}
    if len(graphs) == 2:
        ma, mb = graphs[0]["moments"], graphs[1]["moments"]
        first = next(
            (k for k in range(kmax + 1) if abs(ma[k] - mb[k]) > tol * max(1.0, abs(ma[k]), abs(mb[k]))),
            None,
        )
        out["first_differing_moment"] = first
        same_size = len(spectra[0]) == len(spectra[1])
        out["spectrum_linf_gap"] = float(np.max(np.abs(spectra[0] - spectra[1]))) if same_size else None
    return dumps_json(out)


def cmd_denoise(config: dict, seed: int = 0, base_dir=None) -> str:
    bundle = resolve_bundle(config.get("bundle", "pentane"), base_dir)
    dn = config.get("denoise", {})
    path = dn.get("landscape")
    path = fixture_path() if path is None else _relative(path, base_dir)
    clean = read_landscape_csv(path).to_signal(bundle)
    cover_desc = {"type": "stride_reach", "stride": dn.get("stride", 3), "reach": dn.get("reach", 2)}
    bundle_dict = make_dictionary(bundle, config, base_dir, cover_desc)
    dictionaries = {"total_fourier": fourier_basis(bundle.total), "bundle": bundle_dict}
    grid = dn.get("sigma_grid")
    grid = default_sigma_grid(clean) if grid is None else np.asarray(grid, dtype=float)
    rows = denoise_experiment(clean, dictionaries, grid, int(dn.get("trials", 50)), seed, dn.get("mode", "hard"))
    header = ["method", "sigma", "mean_mse", "std_mse", "trials"]
    return csv_text(
        header,
        ((r.method, r.sigma, r.mean_mse, r.std_mse, r.trials) for r in rows),
        header_lines("denoise", config, seed),
    )


def cmd_dictionary(config: dict, seed: int = 0, base_dir=None) -> str:
    bundle = resolve_bundle(config.get("bundle", "mobius"), base_dir)
    d = make_dictionary(bundle, config, base_dir)
    return dictionary_csv(d, header_lines("dictionary", config, seed))


COMMANDS = {
    "make-bundle": cmd_make_bundle,
    "sweep": cmd_sweep,
    "spectra": cmd_spectra,
    "denoise": cmd_denoise,
    "dictionary": cmd_dictionary,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="bundlegsp", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="JSON config file (defaults apply when omitted)")
    parser.add_argument("--out", help="output path (stdout when omitted)")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--landscape", help="landscape CSV for the denoise command")
    args = parser.parse_args(argv)

    config, base_dir = {}, None
    if args.config:
        path = Path(args.config)
        config = json.loads(path.read_text())
        base_dir = path.parent
    if args.seed is not None:
        config["seed"] = args.seed
    if args.landscape:
        config.setdefault("denoise", {})["landscape"] = str(Path(args.landscape).resolve())
    seed = int(config.get("seed", 0))

    try:
        text = COMMANDS[args.command](config, seed, base_dir)
    except (ValueError, OSError) as exc:
        print(f"bundlegsp {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
