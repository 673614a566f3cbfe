import { z } from 'zod';

const vec3 = z.tuple([z.number(), z.number(), z.number()]);
const extent = z.tuple([z.number(), z.number()]);

/** The slice of the run manifest the renderer consumes. */
const manifestSchema = z.object({
  command: z.string(),
  config: z.object({
    room: z.object({
      x_extent_m: extent,
      y_extent_m: extent,
    }),
    array: z.object({
      center_m: vec3,
      width_nominal_m: z.number(),
    }),
    target_m: vec3,
  }),
  derived: z.record(z.string(), z.unknown()).optional(),
});

export type Manifest = z.infer<typeof manifestSchema>;

export function parseManifest(text: string, label = 'manifest'): Manifest {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (error) {
    throw new Error(`${label}: not valid JSON: ${(error as Error).message}`);
  }
  const result = manifestSchema.safeParse(raw);
  if (!result.success) {
    throw new Error(`${label}: schema mismatch: ${result.error.issues[0]?.message ?? 'unknown'}`);
  }
  return result.data;
}
