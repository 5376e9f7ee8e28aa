"""Plan construction and workspace materialization."""

from agentmill.construct.compose import compose_behavior_spec
from agentmill.construct.materialize import (
    IoFailure,
    TemplateMissing,
    Workspace,
    load_manifest,
    materialize,
    packaged_template_dir,
)
from agentmill.construct.plan import (
    AgentBuildPlan,
    ConstructionConfig,
    ConstructionError,
    CycleDetected,
    DepthExceeded,
    PlanNode,
    UnresolvedSkill,
    UnresolvedSubagent,
    UnresolvedTool,
    construct,
)
from agentmill.construct.registry import (
    ProfileRegistry,
    Registries,
    RegistryError,
    ToolBinding,
    ToolRegistry,
    UnknownProfile,
    UnknownTool,
    profile_id,
)

__all__ = [
    "AgentBuildPlan",
    "ConstructionConfig",
    "ConstructionError",
    "CycleDetected",
    "DepthExceeded",
    "IoFailure",
    "PlanNode",
    "ProfileRegistry",
    "Registries",
    "RegistryError",
    "TemplateMissing",
    "ToolBinding",
    "ToolRegistry",
    "UnknownProfile",
    "UnknownTool",
    "UnresolvedSkill",
    "UnresolvedSubagent",
    "UnresolvedTool",
    "Workspace",
    "compose_behavior_spec",
    "construct",
    "load_manifest",
    "materialize",
    "packaged_template_dir",
    "profile_id",
]
