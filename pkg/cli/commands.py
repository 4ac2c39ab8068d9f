import argparse
from typing import List

from cli.models import Command
from cli.suites import SUITE_MAP


class RegionAction(argparse.Action):
    """
    Stores XMIN XMAX YMIN YMAX; an empty rectangle is a usage error.
    """

    def __call__(self, parser, namespace, values, option_string=None):
        x_min, x_max, y_min, y_max = values
        if not (x_min < x_max and y_min < y_max):
            parser.error(f"{option_string} needs XMIN < XMAX and YMIN < YMAX, got {' '.join(f'{v:g}' for v in values)}")
        setattr(namespace, self.dest, list(values))


SETTINGS_ARGUMENTS = [
    {"flags": ["--method"], "choices": ["closed-form", "integrate"], "default": "closed-form", "help": "Transition-band flow evaluation."},
    {"flags": ["--rtol"], "type": float, "default": 1e-9, "help": "Integrator relative tolerance."},
    {"flags": ["--atol"], "type": float, "default": 1e-12, "help": "Integrator absolute tolerance."},
    {"flags": ["--sample-step"], "dest": "sample_step", "type": float, "default": 0.01, "help": "Leaf sampling step."},
    {"flags": ["--transport-tol"], "dest": "transport_tol", "type": float, "default": 1e-3, "help": "Hausdorff tolerance for leaf transport."},
    {"flags": ["--burn-in"], "dest": "burn_in", "type": int, "default": 3, "help": "Iterates ignored by the codivergence test."},
    {"flags": ["--seed"], "type": int, "default": 20240101, "help": "Seed for generated cases."},
]


def validate_command():
    return Command(
        name="validate",
        description="Checks a leaf space file and lists every violation.",
        arguments=[{"flags": ["file"], "help": "A .leafspace.json file or a built-in name."}],
    )


def compare_command():
    return Command(
        name="compare",
        description="Decides whether two leaf spaces come from free mappings conjugate up to inverse.",
        arguments=[{"flags": ["a"], "help": "First leaf space."}, {"flags": ["b"], "help": "Second leaf space."}],
    )


def collapse_command():
    return Command(
        name="collapse",
        description="Prints the contraction trace of a leaf space.",
        arguments=[
            {"flags": ["file"], "help": "Leaf space to contract."},
            {"flags": ["--frames"], "default": None, "help": "Directory for one SVG frame per step."},
        ],
    )


def build_command():
    return Command(
        name="build",
        description="Builds the leaf space of a band flow spec.",
        arguments=[
            {"flags": ["flowspec"], "help": "A .flow.json file or a built-in flow name."},
            {"flags": ["-o", "--output"], "default": None, "help": "Where to write the leaf space."},
        ],
    )


def reverse_command():
    return Command(
        name="reverse",
        description="Reverses the orientation of a leaf space (the leaf space of f^-1).",
        arguments=[
            {"flags": ["file"], "help": "Leaf space to reverse."},
            {"flags": ["-o", "--output"], "default": None, "help": "Where to write the result."},
        ],
    )


def count_regions_command():
    return Command(
        name="count-regions",
        description="Counts the fundamental regions of a leaf space.",
        arguments=[{"flags": ["file"], "help": "Leaf space."}],
    )


def render_foliation_command():
    return Command(
        name="render-foliation",
        description="Draws the oriented foliation of a band flow as SVG.",
        arguments=[
            {"flags": ["flowspec"], "help": "A .flow.json file or a built-in flow name."},
            {"flags": ["--region"], "nargs": 4, "type": float, "action": RegionAction, "default": [-3.0, 3.0, -3.0, 3.0], "metavar": ("XMIN", "XMAX", "YMIN", "YMAX"), "help": "Drawn rectangle."},
            {"flags": ["--density"], "type": int, "default": 9, "help": "Number of seeded leaves."},
            {"flags": ["-o", "--output"], "default": None, "help": "Where to write the SVG."},
        ]
        + SETTINGS_ARGUMENTS,
    )


def render_leafspace_command():
    return Command(
        name="render-leafspace",
        description="Draws an ordered leaf space as SVG.",
        arguments=[
            {"flags": ["file"], "help": "Leaf space."},
            {"flags": ["-o", "--output"], "default": None, "help": "Where to write the SVG."},
        ],
    )


def verify_command():
    return Command(
        name="verify",
        description="Runs a numeric or combinatorial verification suite.",
        arguments=[{"flags": ["suite"], "choices": list(SUITE_MAP), "help": "Suite to run."}] + SETTINGS_ARGUMENTS,
    )


def demo_command():
    return Command(
        name="demo",
        description="End-to-end walkthrough of a worked example.",
        arguments=[{"flags": ["name"], "choices": ["reeb"], "help": "Example to run."}] + SETTINGS_ARGUMENTS,
    )


def get_commands() -> List[Command]:
    return [
        validate_command(),
        compare_command(),
        collapse_command(),
        build_command(),
        reverse_command(),
        count_regions_command(),
        render_foliation_command(),
        render_leafspace_command(),
        verify_command(),
        demo_command(),
    ]
