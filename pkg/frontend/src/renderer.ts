/**
 * WebGL plane renderer: one full-screen quad per plane, fragment shader
 * maps each output pixel through the plane's target->source homography
 * and samples the plane texture bilinearly; fixed-function blending
 * applies the over operator in back-to-front draw order (straight alpha,
 * matching the desktop renderer's convention).
 */

import type { Mat3 } from "./math.js";
import type { PlaneTexture } from "./compositor.js";

const VERTEX_SRC = `
attribute vec2 aPos;
varying vec2 vPixel;
uniform vec2 uSize;
void main() {
  vPixel = (aPos * 0.5 + 0.5) * (uSize - 1.0);
  gl_Position = vec4(aPos.x, -aPos.y, 0.0, 1.0);
}
`;

const FRAGMENT_SRC = `
precision highp float;
varying vec2 vPixel;
uniform mat3 uHom;
uniform vec2 uTexSize;
uniform sampler2D uPlane;
uniform sampler2D uColor;
uniform bool uColorFromTexture;
void main() {
  vec3 src = uHom * vec3(vPixel, 1.0);
  if (src.z <= 1e-12) {
    gl_FragColor = vec4(0.0);
    return;
  }
  vec2 p = src.xy / src.z;
  if (p.x < 0.0 || p.y < 0.0 || p.x > uTexSize.x - 1.0 || p.y > uTexSize.y - 1.0) {
    gl_FragColor = vec4(0.0);
    return;
  }
  vec2 uv = (p + 0.5) / uTexSize;
  vec4 plane = texture2D(uPlane, uv);
  vec3 rgb = uColorFromTexture ? texture2D(uColor, uv).rgb : plane.rgb;
  gl_FragColor = vec4(rgb, plane.a);
}
`;

function compileShader(gl: WebGLRenderingContext, type: number, src: string): WebGLShader {
  const shader = gl.createShader(type);
  if (!shader) {
    throw new Error("cannot allocate shader");
  }
  gl.shaderSource(shader, src);
  gl.compileShader(shader);
  if (!gl.getShaderParameter(shader, gl.COMPILE_STATUS)) {
    throw new Error(`shader compile failed: ${gl.getShaderInfoLog(shader)}`);
  }
  return shader;
}

export class PlaneRenderer {
  private gl: WebGLRenderingContext;
  private textures: WebGLTexture[] = [];
  private colorTexture: WebGLTexture | null = null;
  private uHom: WebGLUniformLocation;
  private uTexSize: WebGLUniformLocation;
  private uSize: WebGLUniformLocation;
  private uColorFromTexture: WebGLUniformLocation;
  private texWidth = 0;
  private texHeight = 0;

  constructor(private canvas: HTMLCanvasElement) {
    const gl = canvas.getContext("webgl", { preserveDrawingBuffer: true });
    if (!gl) {
      throw new Error("WebGL is not available");
    }
    this.gl = gl;
    const program = gl.createProgram();
    if (!program) {
      throw new Error("cannot allocate GL program");
    }
    gl.attachShader(program, compileShader(gl, gl.VERTEX_SHADER, VERTEX_SRC));
    gl.attachShader(program, compileShader(gl, gl.FRAGMENT_SHADER, FRAGMENT_SRC));
    gl.linkProgram(program);
    if (!gl.getProgramParameter(program, gl.LINK_STATUS)) {
      throw new Error(`program link failed: ${gl.getProgramInfoLog(program)}`);
    }
    gl.useProgram(program);

    const quad = gl.createBuffer();
    gl.bindBuffer(gl.ARRAY_BUFFER, quad);
    gl.bufferData(
      gl.ARRAY_BUFFER,
      new Float32Array([-1, -1, 1, -1, -1, 1, 1, 1]),
      gl.STATIC_DRAW,
    );
    const aPos = gl.getAttribLocation(program, "aPos");
    gl.enableVertexAttribArray(aPos);
    gl.vertexAttribPointer(aPos, 2, gl.FLOAT, false, 0, 0);

    const uniform = (name: string) => {
      const loc = gl.getUniformLocation(program, name);
      if (!loc) {
        throw new Error(`missing uniform ${name}`);
      }
      return loc;
    };
    this.uHom = uniform("uHom");
    this.uTexSize = uniform("uTexSize");
    this.uSize = uniform("uSize");
    this.uColorFromTexture = uniform("uColorFromTexture");
    gl.uniform1i(uniform("uPlane"), 0);
    gl.uniform1i(uniform("uColor"), 1);

    gl.enable(gl.BLEND);
    gl.blendFunc(gl.SRC_ALPHA, gl.ONE_MINUS_SRC_ALPHA);
    gl.clearColor(0, 0, 0, 1);
  }

  private makeTexture(source: TexImageSource | PlaneTexture): WebGLTexture {
    const gl = this.gl;
    const tex = gl.createTexture();
    if (!tex) {
      throw new Error("cannot allocate texture");
    }
    gl.bindTexture(gl.TEXTURE_2D, tex);
    if ("data" in source) {
      gl.texImage2D(
        gl.TEXTURE_2D,
        0,
        gl.RGBA,
        source.width,
        source.height,
        0,
        gl.RGBA,
        gl.UNSIGNED_BYTE,
        new Uint8Array(source.data.buffer.slice(0)),
      );
    } else {
      gl.texImage2D(gl.TEXTURE_2D, 0, gl.RGBA, gl.RGBA, gl.UNSIGNED_BYTE, source);
    }
    gl.texParameteri(gl.TEXTURE_2D, gl.TEXTURE_MIN_FILTER, gl.LINEAR);
    gl.texParameteri(gl.TEXTURE_2D, gl.TEXTURE_MAG_FILTER, gl.LINEAR);
    gl.texParameteri(gl.TEXTURE_2D, gl.TEXTURE_WRAP_S, gl.CLAMP_TO_EDGE);
    gl.texParameteri(gl.TEXTURE_2D, gl.TEXTURE_WRAP_T, gl.CLAMP_TO_EDGE);
    return tex;
  }

  /** Upload all plane textures (back-to-front order). */
  setPlanes(sources: (TexImageSource | PlaneTexture)[], width: number, height: number): void {
    this.textures = sources.map((s) => this.makeTexture(s));
    this.texWidth = width;
    this.texHeight = height;
  }

  /** Upload the reference-view color texture for the foreground-only mode. */
  setColorTexture(source: PlaneTexture): void {
    this.colorTexture = this.makeTexture(source);
  }

  /**
   * Draw the selected planes with their homographies (one matrix per
   * selected plane, aligned with `planeIndices`).
   */
  draw(planeIndices: number[], homographies: Mat3[], foregroundOnly: boolean): void {
    const gl = this.gl;
    gl.viewport(0, 0, this.canvas.width, this.canvas.height);
    gl.clear(gl.COLOR_BUFFER_BIT);
    gl.uniform2f(this.uSize, this.canvas.width, this.canvas.height);
    gl.uniform2f(this.uTexSize, this.texWidth, this.texHeight);
    gl.uniform1i(this.uColorFromTexture, foregroundOnly && this.colorTexture ? 1 : 0);
    if (this.colorTexture) {
      gl.activeTexture(gl.TEXTURE1);
      gl.bindTexture(gl.TEXTURE_2D, this.colorTexture);
    }
    gl.activeTexture(gl.TEXTURE0);
    for (let i = 0; i < planeIndices.length; i++) {
      const hom = homographies[i];
      // GLSL mat3 is column-major; our Mat3 is row-major.
      const colMajor = new Float32Array([
        hom[0], hom[3], hom[6],
        hom[1], hom[4], hom[7],
        hom[2], hom[5], hom[8],
      ]);
      gl.uniformMatrix3fv(this.uHom, false, colMajor);
      gl.bindTexture(gl.TEXTURE_2D, this.textures[planeIndices[i]]);
      gl.drawArrays(gl.TRIANGLE_STRIP, 0, 4);
    }
  }
}
