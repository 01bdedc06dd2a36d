"""Valid-mode 2D convolution for grayscale images as nested lists."""


def convolve2d(image: list[list[float]], kernel: list[list[float]]) -> list[list[float]]:
    """Convolve ``image`` with ``kernel``; the kernel is flipped both ways."""
    kernel_rows = len(kernel)
    kernel_cols = len(kernel[0])
    flipped = [row[::-1] for row in kernel[::-1]]
    out_rows = len(image) - kernel_rows + 1
    out_cols = len(image[0]) - kernel_cols + 1
    result = []
    for row in range(out_rows):
        out_row = []
        for col in range(out_cols):
            acc = 0.0
            for dr in range(kernel_rows):
                for dc in range(kernel_cols):
                    acc += image[row + dr][col + dc] * flipped[dr][dc]
            out_row.append(acc)
        result.append(out_row)
    return result
