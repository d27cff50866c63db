"""Command-line client for the uvmark service.

The CLI is a thin HTTP client: by default it mounts the FastAPI app
in-process (no server needed); --server points it at a running instance.
Exit codes: 0 success, 1 validation error, 2 run completed with per-item
failures recorded.
"""

from __future__ import annotations

import json
import sys

import click
import httpx


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # in-process: drive the ASGI app directly, no server needed
    from starlette.testclient import TestClient

    from .service.app import app

    return TestClient(app, raise_server_exceptions=False)


def _post(ctx: click.Context, path: str, payload: dict) -> dict:
    with _client(ctx.obj.get("server")) as client:
        resp = client.post(path, json=payload)
    if resp.status_code != 200:
        try:
            detail = resp.json()
            msg = detail.get("message") or json.dumps(detail)
        except ValueError:
            msg = resp.text
        click.echo(f"error: {msg}", err=True)
        sys.exit(1)
    return resp.json()


@click.group()
@click.option("--server", default=None, envvar="UVMARK_SERVER",
              help="Base URL of a running uvmark service; default runs in-process.")
@click.pass_context
def main(ctx, server):
    """Segmentation-mask annotation from interleaved regular/UV image streams."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command("controller-sim")
@click.option("--rate", "camera_rate_hz", type=float, required=True, help="Camera rate, Hz.")
@click.option("--duration", "duration_ms", type=float, required=True, help="Run length, ms.")
@click.option("--mode", type=click.Choice(["dark", "ambient"]), default="dark")
@click.option("--regular-intensity", type=float, default=1.0)
@click.option("--uv-intensity", type=float, default=1.0)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write records here instead of stdout.")
@click.pass_context
def controller_sim(ctx, camera_rate_hz, duration_ms, mode, regular_intensity,
                   uv_intensity, out):
    """Emit the trigger/lighting schedule as t_ms,regular,uv,trigger records."""
    data = _post(ctx, "/controller-sim", {
        "camera_rate_hz": camera_rate_hz, "duration_ms": duration_ms, "mode": mode,
        "regular_intensity": regular_intensity, "uv_intensity": uv_intensity,
    })
    text = "\n".join(data["records"]) + ("\n" if data["records"] else "")
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--spec", "spec_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="SceneSpec JSON.")
@click.option("--frames", "n_frames", type=int, required=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--seed", type=int, default=None, help="Override the spec's seed.")
@click.pass_context
def synth(ctx, spec_path, n_frames, out_dir, seed):
    """Generate a synthetic stream with ground-truth sidecars."""
    with open(spec_path) as f:
        spec = json.load(f)
    data = _post(ctx, "/synth", {"spec": spec, "n_frames": n_frames,
                                 "out_dir": out_dir, "seed": seed})
    click.echo(json.dumps(data, indent=2))


@main.command()
@click.option("--manifest", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the pairing report here as JSON.")
@click.pass_context
def pair(ctx, manifest, out):
    """Validate alternation and report frame pairs."""
    data = _post(ctx, "/pair", {"manifest": manifest})
    text = json.dumps(data, indent=2)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    click.echo(text)


@main.command()
@click.option("--manifest", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Per-pair homography JSON output.")
@click.option("--debug-dir", type=click.Path(file_okay=False), default=None,
              help="Dump keypoint/match visualization PNGs.")
@click.option("--seed", type=int, default=0)
@click.option("--iterations", type=int, default=1000)
@click.option("--inlier-threshold", type=float, default=2.0)
@click.option("--min-inliers", type=int, default=12)
@click.option("--fast-threshold", type=int, default=20)
@click.option("--max-keypoints", type=int, default=500)
@click.option("--max-match-distance", type=int, default=64)
@click.pass_context
def align(ctx, manifest, out, debug_dir, seed, iterations, inlier_threshold,
          min_inliers, fast_threshold, max_keypoints, max_match_distance):
    """Estimate per-pair UV->regular homographies."""
    data = _post(ctx, "/align", {
        "manifest": manifest, "out": out, "debug_dir": debug_dir, "seed": seed,
        "iterations": iterations, "inlier_threshold": inlier_threshold,
        "min_inliers": min_inliers, "fast_threshold": fast_threshold,
        "max_keypoints": max_keypoints, "max_match_distance": max_match_distance,
    })
    click.echo(json.dumps(data, indent=2))
    if any(p["failed"] for p in data["pairs"]):
        sys.exit(2)


@main.command()
@click.option("--manifest", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--palette", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--mode", type=click.Choice(["dark", "ambient"]), required=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--align/--no-align", "do_align", default=True,
              help="Ambient mode: correct camera motion before differencing.")
@click.option("--jobs", type=int, default=1, help="Per-pair worker pool size.")
@click.option("--preview", is_flag=True, help="Also write image/mask overlay PNGs.")
@click.option("--seed", type=int, default=0)
@click.pass_context
def annotate(ctx, manifest, palette, mode, out_dir, do_align, jobs, preview, seed):
    """Run the full annotation pipeline over a stream."""
    data = _post(ctx, "/annotate", {
        "manifest": manifest, "palette": palette, "mode": mode, "out_dir": out_dir,
        "align": do_align, "jobs": jobs, "preview": preview, "seed": seed,
    })
    click.echo(json.dumps(data, indent=2))
    if data["failed"] > 0:
        sys.exit(2)


@main.command("eval")
@click.option("--a", "a_dir", type=click.Path(exists=True, file_okay=False), required=True)
@click.option("--b", "b_dir", type=click.Path(exists=True, file_okay=False), default=None)
@click.option("--reference", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Single reference mask, alternative to --b.")
@click.option("--label", "labels", type=int, multiple=True,
              help="Labels to score; default: every label present.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--csv", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def eval_cmd(ctx, a_dir, b_dir, reference, labels, out, csv):
    """IoU agreement report between two mask sets."""
    data = _post(ctx, "/eval", {
        "a_dir": a_dir, "b_dir": b_dir, "reference": reference,
        "labels": list(labels) or None, "out": out, "csv": csv,
    })
    click.echo(json.dumps(data, indent=2))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the uvmark service with uvicorn."""
    import uvicorn

    uvicorn.run("uvmark.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
