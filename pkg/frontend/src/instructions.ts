import type { InstructionStep } from "./types.js";

/** Parse the service's XML instruction document into step entries.
 *
 * Attribute values are kept verbatim; the panel never reformats or
 * recomputes what the service said.
 */
export function parseInstructions(xml: string): InstructionStep[] {
  const doc = new DOMParser().parseFromString(xml, "application/xml");
  if (doc.querySelector("parsererror")) {
    throw new Error("unparseable instruction document");
  }
  const steps: InstructionStep[] = [];
  for (const road of Array.from(doc.querySelectorAll("route > naturalRoad"))) {
    steps.push({
      roadId: Number(road.getAttribute("id")),
      length: road.getAttribute("length") ?? "",
      turn: road.getAttribute("turn"),
      names: Array.from(road.querySelectorAll("namedRoad")).map((n) => ({
        name: n.getAttribute("name") ?? "unnamed",
        length: n.getAttribute("length") ?? "",
      })),
    });
  }
  return steps;
}

export function stepText(step: InstructionStep, index: number): string {
  const names = step.names.map((n) => n.name).join(", ");
  const verb =
    index === 0 ? "start on" : step.turn === "continue" ? "continue onto" : `turn ${step.turn} onto`;
  return `${verb} ${names} (${step.length})`;
}
