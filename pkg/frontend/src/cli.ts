#!/usr/bin/env node
/** quenchlab-plot plot <recipe.json> --out <path.svg>
 *
 * Recipe paths are resolved relative to the recipe file's directory.
 */

import fs from "node:fs";
import path from "node:path";

import { Recipe, renderRecipe, validateRecipe } from "./plots.js";

export function main(argv: string[]): number {
  const args = argv.slice(2);
  if (args[0] !== "plot" || args.length < 2) {
    process.stderr.write(
      "usage: quenchlab-plot plot <recipe.json> --out <path.svg>\n",
    );
    return 2;
  }
  const recipePath = args[1];
  const outIdx = args.indexOf("--out");
  if (outIdx < 0 || outIdx + 1 >= args.length) {
    process.stderr.write("missing --out <path>\n");
    return 2;
  }
  const outPath = args[outIdx + 1];

  let recipe: Recipe;
  try {
    recipe = validateRecipe(JSON.parse(fs.readFileSync(recipePath, "utf-8")));
  } catch (err) {
    process.stderr.write(`invalid recipe: ${(err as Error).message}\n`);
    return 1;
  }
  const base = path.dirname(path.resolve(recipePath));
  recipe.inputs = recipe.inputs.map((inp) => ({
    ...inp,
    path: path.isAbsolute(inp.path) ? inp.path : path.join(base, inp.path),
  }));

  let svg: string;
  try {
    svg = renderRecipe(recipe);
  } catch (err) {
    process.stderr.write(`plot failed: ${(err as Error).message}\n`);
    return 1;
  }
  fs.writeFileSync(outPath, svg);
  process.stdout.write(`wrote ${outPath}\n`);
  return 0;
}

process.exit(main(process.argv));
